#include "hecke/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hecke {

NumericConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("config: cannot open " + path);
    NumericConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                throw std::runtime_error("config: malformed line " + std::to_string(lineno));
            continue;
        }
        std::istringstream key_in(line.substr(0, eq)), val_in(line.substr(eq + 1));
        std::string key;
        double val;
        key_in >> key;
        val_in >> val;
        if (!val_in)
            throw std::runtime_error("config: bad value on line " + std::to_string(lineno));
        if (key == "series_tol") cfg.series_tol = val;
        else if (key == "newton_tol") cfg.newton_tol = val;
        else if (key == "ode_rtol") cfg.ode_rtol = val;
        else if (key == "zero_tol") cfg.zero_tol = val;
        else if (key == "pole_floor") cfg.pole_floor = val;
        else throw std::runtime_error("config: unknown key '" + key + "'");
    }
    return cfg;
}

} // namespace hecke
