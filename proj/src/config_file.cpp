#include "dephase/config_file.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "dephase/errors.hpp"

namespace dephase {
namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

double parse_double(const std::string& key, const std::string& value) {
    double v = 0.0;
    const char* end = value.data() + value.size();
    const auto res = std::from_chars(value.data(), end, v);
    if (res.ec != std::errc{} || res.ptr != end)
        throw ConfigError(key + ": expected a number, got '" + value + "'");
    return v;
}

std::size_t parse_count(const std::string& key, const std::string& value) {
    std::size_t v = 0;
    const char* end = value.data() + value.size();
    const auto res = std::from_chars(value.data(), end, v);
    if (res.ec != std::errc{} || res.ptr != end)
        throw ConfigError(key + ": expected a non-negative integer, got '" +
                          value + "'");
    return v;
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

} // namespace

std::vector<std::pair<std::string, std::string>>
parse_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file: " + path);
    std::vector<std::pair<std::string, std::string>> entries;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": expected 'key = value'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty())
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": empty key");
        entries.emplace_back(key, value);
    }
    return entries;
}

void apply_config_key(RunConfig& cfg, const std::string& key,
                      const std::string& value) {
    if (key == "n_spins") {
        cfg.params.n_spins = parse_count(key, value);
    } else if (key == "g") {
        cfg.params.g0 = cfg.params.g1 = parse_double(key, value);
    } else if (key == "g0") {
        cfg.params.g0 = parse_double(key, value);
    } else if (key == "g1") {
        cfg.params.g1 = parse_double(key, value);
    } else if (key == "jz") {
        cfg.params.j_z = parse_double(key, value);
    } else if (key == "hz") {
        cfg.params.h_z = parse_double(key, value);
    } else if (key == "beta") {
        cfg.params.beta = parse_double(key, value);
    } else if (key == "eps0") {
        cfg.params.eps0 = parse_double(key, value);
    } else if (key == "eps1") {
        cfg.params.eps1 = parse_double(key, value);
    } else if (key == "theta") {
        cfg.params.theta = parse_double(key, value);
    } else if (key == "phi") {
        cfg.params.phi = parse_double(key, value);
    } else if (key == "init") {
        if (value == "plus") cfg.params.initial_qubit = model::InitialQubit::plus;
        else if (value == "minus") cfg.params.initial_qubit = model::InitialQubit::minus;
        else if (value == "custom") cfg.params.initial_qubit = model::InitialQubit::custom;
        else throw ConfigError("init: expected plus|minus|custom, got '" + value + "'");
    } else if (key == "t_max") {
        cfg.t_max = parse_double(key, value);
    } else if (key == "samples") {
        cfg.n_samples = parse_count(key, value);
    } else if (key == "sweep_n") {
        cfg.sweep_n.clear();
        for (const auto& item : split_list(value))
            cfg.sweep_n.push_back(parse_count(key, item));
        if (cfg.sweep_n.empty())
            throw ConfigError("sweep_n: list must not be empty");
    } else if (key == "sweep_g") {
        cfg.sweep_g.clear();
        for (const auto& item : split_list(value))
            cfg.sweep_g.push_back(parse_double(key, item));
        if (cfg.sweep_g.empty())
            throw ConfigError("sweep_g: list must not be empty");
    } else if (key == "oracle") {
        if (value == "on") cfg.oracle = OracleMode::on;
        else if (value == "off") cfg.oracle = OracleMode::off;
        else if (value == "auto") cfg.oracle = OracleMode::automatic;
        else throw ConfigError("oracle: expected on|off|auto, got '" + value + "'");
    } else if (key == "out_dir") {
        if (value.empty()) throw ConfigError("out_dir: must not be empty");
        cfg.out_dir = value;
    } else if (key == "emit") {
        cfg.emit_csv = cfg.emit_svg = cfg.emit_identity_report = false;
        for (const auto& item : split_list(value)) {
            if (item == "csv") cfg.emit_csv = true;
            else if (item == "svg") cfg.emit_svg = true;
            else if (item == "identity-report") cfg.emit_identity_report = true;
            else if (item == "all")
                cfg.emit_csv = cfg.emit_svg = cfg.emit_identity_report = true;
            else
                throw ConfigError("emit: expected csv|svg|identity-report|all, got '" +
                                  item + "'");
        }
    } else if (key == "fig") {
        cfg.figs.clear();
        cfg.figs_explicit = false;
        for (const auto& item : split_list(value)) {
            if (item == "all") {
                cfg.figs = {2, 3, 4, 5};
            } else if (item == "2" || item == "3" || item == "4" || item == "5") {
                cfg.figs.insert(item[0] - '0');
                cfg.figs_explicit = true; // named figure: missing data errors
            } else {
                throw ConfigError("fig: expected 2|3|4|5|all, got '" + item + "'");
            }
        }
    } else {
        throw ConfigError("unknown config key '" + key + "'");
    }
}

} // namespace dephase
