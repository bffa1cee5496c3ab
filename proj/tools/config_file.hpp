#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

#include "gfra/config.hpp"

namespace gfra::cli {

/// Configuration error attributable to one key; `where` is "file:line" or "--flag".
class ConfigInputError : public std::runtime_error {
public:
    ConfigInputError(const std::string& key, const std::string& where, const std::string& message);
};

/// Raw key -> value strings plus where each value came from.
struct KeyValues {
    std::map<std::string, std::string> values;
    std::map<std::string, std::string> origin;

    bool has(const std::string& key) const { return values.count(key) > 0; }
    void set(const std::string& key, std::string value, std::string where);
};

/// Keys describing one SystemConfig, matching the CLI flag names.
const std::set<std::string>& system_config_keys();

/// Parses flat `key = value` text; `#` starts a comment. Keys outside `allowed`
/// and repeated keys are rejected with their line number.
KeyValues parse_key_values(std::string_view text, const std::set<std::string>& allowed,
                           const std::string& source);

/// Reads a config file: flat key=value text, or a JSON results document whose
/// "config" object (or the top-level object) holds the keys.
KeyValues read_config_file(const std::filesystem::path& path, const std::set<std::string>& allowed);

double parse_real(const KeyValues& kv, const std::string& key);
long long parse_integer(const KeyValues& kv, const std::string& key);

/// Overwrites the SystemConfig fields whose keys are present in `kv`.
void apply_values(SystemConfig& cfg, const KeyValues& kv);

/// Builds a SystemConfig; G, gamma-c, T, L and the erasures (eps1/eps2 or eps)
/// are required, model/sharing/alpha default to collision/nonorthogonal/0.5.
SystemConfig config_from_values(const KeyValues& kv);

}  // namespace gfra::cli
