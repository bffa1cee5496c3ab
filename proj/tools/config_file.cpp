#include "config_file.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gfra::cli {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string json_scalar(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number()) return v.dump();
    throw std::invalid_argument("expected a number or string, got " + v.dump());
}

KeyValues parse_json_config(std::string_view text, const std::set<std::string>& allowed,
                            const std::string& source) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigInputError("", source, std::string("malformed JSON: ") + e.what());
    }
    const nlohmann::json& obj = doc.contains("config") ? doc.at("config") : doc;
    if (!obj.is_object()) throw ConfigInputError("", source, "expected a JSON object of config keys");

    KeyValues kv;
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.count(key)) throw ConfigInputError(key, source, "unknown key '" + key + "'");
        try {
            kv.set(key, json_scalar(value), source);
        } catch (const std::invalid_argument& e) {
            throw ConfigInputError(key, source, e.what());
        }
    }
    return kv;
}

}  // namespace

ConfigInputError::ConfigInputError(const std::string& key, const std::string& where,
                                   const std::string& message)
    : std::runtime_error((where.empty() ? "" : where + ": ") + message +
                         (key.empty() ? "" : " [key " + key + "]")) {}

void KeyValues::set(const std::string& key, std::string value, std::string where) {
    values[key] = std::move(value);
    origin[key] = std::move(where);
}

const std::set<std::string>& system_config_keys() {
    static const std::set<std::string> keys{"G",   "gamma-c", "T",     "L",       "eps1",
                                            "eps2", "eps",    "model", "sharing", "alpha"};
    return keys;
}

KeyValues parse_key_values(std::string_view text, const std::set<std::string>& allowed,
                           const std::string& source) {
    KeyValues kv;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto end = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const std::string where = source + ":" + std::to_string(line_no);
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigInputError("", where, "expected key=value, got '" + std::string(line) + "'");
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (!allowed.count(key)) throw ConfigInputError(key, where, "unknown key '" + key + "'");
        if (kv.has(key)) throw ConfigInputError(key, where, "duplicate key '" + key + "'");
        if (value.empty()) throw ConfigInputError(key, where, "empty value for '" + key + "'");
        kv.set(key, value, where);
    }
    return kv;
}

KeyValues read_config_file(const std::filesystem::path& path, const std::set<std::string>& allowed) {
    std::ifstream in(path);
    if (!in) throw ConfigInputError("", path.string(), "cannot open config file");
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    if (trim(text).starts_with("{")) return parse_json_config(text, allowed, path.string());
    return parse_key_values(text, allowed, path.string());
}

double parse_real(const KeyValues& kv, const std::string& key) {
    const std::string& s = kv.values.at(key);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ConfigInputError(key, kv.origin.at(key), "'" + s + "' is not a number");
    }
    return value;
}

long long parse_integer(const KeyValues& kv, const std::string& key) {
    const std::string& s = kv.values.at(key);
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ConfigInputError(key, kv.origin.at(key), "'" + s + "' is not an integer");
    }
    return value;
}

void apply_values(SystemConfig& cfg, const KeyValues& kv) {
    if (kv.has("G")) cfg.total_load = parse_real(kv, "G");
    if (kv.has("gamma-c")) cfg.critical_fraction = parse_real(kv, "gamma-c");
    if (kv.has("T")) cfg.slots_per_frame = static_cast<int>(parse_integer(kv, "T"));
    if (kv.has("L")) cfg.num_aps = static_cast<int>(parse_integer(kv, "L"));
    if (kv.has("eps")) cfg.access_erasure = cfg.backhaul_erasure = parse_real(kv, "eps");
    if (kv.has("eps1")) cfg.access_erasure = parse_real(kv, "eps1");
    if (kv.has("eps2")) cfg.backhaul_erasure = parse_real(kv, "eps2");
    try {
        if (kv.has("model")) cfg.receiver_model = parse_receiver_model(kv.values.at("model"));
        if (kv.has("sharing")) cfg.sharing = parse_sharing(kv.values.at("sharing"));
    } catch (const ConfigError& e) {
        const std::string key = e.field() == "receiver_model" ? "model" : "sharing";
        throw ConfigInputError(key, kv.origin.at(key), e.what());
    }
    if (kv.has("alpha")) cfg.tdma_fraction = parse_real(kv, "alpha");
}

SystemConfig config_from_values(const KeyValues& kv) {
    for (const char* key : {"G", "gamma-c", "T", "L"}) {
        if (!kv.has(key)) throw ConfigInputError(key, "", "missing required key '" + std::string(key) + "'");
    }
    if (!kv.has("eps") && !(kv.has("eps1") && kv.has("eps2"))) {
        throw ConfigInputError(kv.has("eps1") ? "eps2" : "eps1", "",
                               "missing erasure probability (give eps, or eps1 and eps2)");
    }
    SystemConfig cfg;
    apply_values(cfg, kv);
    return cfg;
}

}  // namespace gfra::cli
