#include "output.hpp"

#include <cstdio>
#include <cstdlib>

namespace gfra::cli {

namespace {

Json optional_real(const std::optional<double>& v) {
    return v ? Json(round_real(*v)) : Json(nullptr);
}

struct CsvCell {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_real(v); }
    std::string operator()(const std::string& v) const { return v; }
};

struct JsonCell {
    Json operator()(std::monostate) const { return nullptr; }
    Json operator()(std::int64_t v) const { return v; }
    Json operator()(double v) const { return round_real(v); }
    Json operator()(const std::string& v) const { return v; }
};

}  // namespace

std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double round_real(double v) {
    return std::strtod(format_real(v).c_str(), nullptr);
}

Json config_json(const SystemConfig& cfg) {
    Json j;
    j["G"] = cfg.total_load;
    j["gamma-c"] = cfg.critical_fraction;
    j["T"] = cfg.slots_per_frame;
    j["L"] = cfg.num_aps;
    j["eps1"] = cfg.access_erasure;
    j["eps2"] = cfg.backhaul_erasure;
    j["model"] = std::string(to_string(cfg.receiver_model));
    j["sharing"] = std::string(to_string(cfg.sharing));
    j["alpha"] = cfg.tdma_fraction;
    return j;
}

Json metrics_json(const ServicePair<double>& throughput,
                            const ServicePair<std::optional<double>>& reliability) {
    return {{"R_c", round_real(throughput.critical)},
            {"R_cbar", round_real(throughput.noncritical)},
            {"Gamma_c", optional_real(reliability.critical)},
            {"Gamma_cbar", optional_real(reliability.noncritical)}};
}

void write_csv(std::ostream& out, const SweepResult& table) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        out << (i ? "," : "") << table.columns[i];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << std::visit(CsvCell{}, row[i]);
        }
        out << '\n';
    }
}

Json table_json(const SweepResult& table) {
    Json rows = Json::array();
    for (const auto& row : table.rows) {
        Json obj = Json::object();
        for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = std::visit(JsonCell{}, row[i]);
        rows.push_back(std::move(obj));
    }
    return {{"columns", table.columns}, {"rows", rows}};
}

}  // namespace gfra::cli
