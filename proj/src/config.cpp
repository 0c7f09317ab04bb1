#include "fkvx/config.hpp"

#include "fkvx/expression.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace fkvx {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& value, const std::string& key, int line) {
    try {
        std::size_t used = 0;
        double v = std::stod(value, &used);
        if (used != value.size())
            throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(line) + ": key '" + key +
                          "': expected a number, got '" + value + "'");
    }
}

std::uint64_t parse_count(const std::string& value, const std::string& key, int line) {
    try {
        std::size_t used = 0;
        unsigned long long v = std::stoull(value, &used);
        if (used != value.size())
            throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(line) + ": key '" + key +
                          "': expected a nonnegative integer, got '" + value + "'");
    }
}

// Certificate keys look like p.delta / q.M0 inside [exponents].
bool apply_cert_key(std::optional<ClassSCertificate>& cert, const std::string& field,
                    double value) {
    if (!cert)
        cert = ClassSCertificate{};
    if (field == "h_minus") cert->h_minus = value;
    else if (field == "h_plus") cert->h_plus = value;
    else if (field == "delta") cert->delta = value;
    else if (field == "M0") cert->M0 = value;
    else if (field == "C0") cert->C0 = value;
    else if (field == "alpha") cert->alpha = value;
    else if (field == "M_inf") cert->M_inf = value;
    else if (field == "R_inf") cert->R_inf = value;
    else return false;
    return true;
}

} // namespace

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");

    RunConfig cfg;
    std::string section;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto comment = line.find('#');
        if (comment != std::string::npos)
            line = line.substr(0, comment);
        line = trim(line);
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) + ": malformed section header");
            section = line.substr(1, line.size() - 2);
            if (section != "physical" && section != "discretization" && section != "exponents" &&
                section != "output")
                throw ConfigError("line " + std::to_string(lineno) + ": unknown section [" +
                                  section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": key '" + key +
                              "' outside any section");

        if (section == "physical") {
            if (key == "mu") cfg.mu = parse_double(value, key, lineno);
            else if (key == "sigma") cfg.sigma = parse_double(value, key, lineno);
            else if (key == "V") cfg.V_expr = value;
            else if (key == "f") cfg.f_expr = value;
            else if (key == "T") cfg.T = parse_double(value, key, lineno);
            else if (key == "r") cfg.r = parse_double(value, key, lineno);
            else if (key == "R") cfg.R = parse_double(value, key, lineno);
            else throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key +
                                   "' in [physical]");
        } else if (section == "discretization") {
            if (key == "n_x") cfg.n_x = parse_count(value, key, lineno);
            else if (key == "n_t") cfg.n_t = parse_count(value, key, lineno);
            else if (key == "n_paths") cfg.n_paths = parse_count(value, key, lineno);
            else if (key == "n_steps") cfg.n_steps = parse_count(value, key, lineno);
            else throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key +
                                   "' in [discretization]");
        } else if (section == "exponents") {
            if (key == "case") {
                cfg.case_label = value;
            } else if (key == "p") {
                cfg.p_expr = value;
                cfg.case_label.clear();
            } else if (key == "q") {
                cfg.q_expr = value;
                cfg.case_label.clear();
            } else if (key.size() > 2 && (key[0] == 'p' || key[0] == 'q') && key[1] == '.') {
                auto& cert = key[0] == 'p' ? cfg.p_cert : cfg.q_cert;
                if (!apply_cert_key(cert, key.substr(2), parse_double(value, key, lineno)))
                    throw ConfigError("line " + std::to_string(lineno) +
                                      ": unknown certificate field '" + key + "'");
            } else {
                throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key +
                                  "' in [exponents]");
            }
        } else {  // output
            if (key == "dir") cfg.output_dir = value;
            else if (key == "snapshot_stride") cfg.snapshot_stride = parse_count(value, key, lineno);
            else if (key == "interior_trim") cfg.interior_trim = parse_count(value, key, lineno);
            else if (key == "seed") cfg.master_seed = parse_count(value, key, lineno);
            else if (key == "threads") cfg.n_threads = static_cast<int>(parse_count(value, key, lineno));
            else throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key +
                                   "' in [output]");
        }
    }
    return cfg;
}

void apply_env_overrides(RunConfig& config) {
    if (const char* seed = std::getenv("FKVX_SEED")) {
        try {
            config.master_seed = parse_count(seed, "FKVX_SEED", 0);
        } catch (const ConfigError&) {
            throw ConfigError("FKVX_SEED: expected a nonnegative integer, got '" +
                              std::string(seed) + "'");
        }
    }
}

namespace {

std::function<double(double)> compile(const std::string& text, const std::string& what) {
    try {
        auto expr = std::make_shared<Expression>(Expression::parse(text));
        return [expr](double x) { return expr->eval(x); };
    } catch (const ParseError& e) {
        throw ConfigError(what + ": " + e.what());
    }
}

ExponentFunction compile_exponent(const std::string& text,
                                  const std::optional<ClassSCertificate>& cert,
                                  const std::string& what) {
    try {
        auto expr = std::make_shared<Expression>(Expression::parse(text));
        ExponentFunction fn;
        fn.eval = [expr](double x) { return expr->eval(x); };
        fn.deriv = [expr](double x) { return expr->derivative(x); };
        fn.certificate = cert;
        return fn;
    } catch (const ParseError& e) {
        throw ConfigError(what + ": " + e.what());
    }
}

} // namespace

ModelSpec build_model(const RunConfig& config) {
    ModelSpec spec;
    if (!config.case_label.empty()) {
        auto id = case_from_name(config.case_label);
        if (!id)
            throw ConfigError("unknown case '" + config.case_label +
                              "' (expected case1 | case2 | case3)");
        auto pair = builtin_case(*id);
        spec.p = std::move(pair.p);
        spec.q = std::move(pair.q);
    } else {
        if (config.p_expr.empty() || config.q_expr.empty())
            throw ConfigError("custom exponents require both p and q expressions");
        spec.p = compile_exponent(config.p_expr, config.p_cert, "exponent p");
        spec.q = compile_exponent(config.q_expr, config.q_cert, "exponent q");
    }
    spec.mu = config.mu;
    spec.sigma = config.sigma;
    spec.T = config.T;
    spec.domain_r = config.r;
    spec.domain_R = config.R;
    spec.V = compile(config.V_expr, "potential V");
    spec.f = compile(config.f_expr, "payoff f");
    if (spec.mu <= 0.0 || spec.sigma <= 0.0 || spec.T <= 0.0)
        throw ConfigError("mu, sigma and T must be positive");
    if (!(0.0 < config.r && config.r < config.R))
        throw ConfigError("domain requires 0 < r < R");
    return spec;
}

} // namespace fkvx
