#pragma once

#include "fkvx/model.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace fkvx {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Flat key-value config with [physical], [discretization], [exponents] and
// [output] sections. Defaults reproduce the reference experiment: mu=0.1,
// sigma=0.2, V=0.1, f=exp(-0.1x), T=1, domain [0.1,50], N_x=N_t=N_steps=400,
// N_paths=20000.
struct RunConfig {
    std::string case_label = "case1";  // empty: custom exponents below
    std::string p_expr, q_expr;
    std::optional<ClassSCertificate> p_cert, q_cert;

    double mu = 0.1;
    double sigma = 0.2;
    std::string V_expr = "0.1";
    std::string f_expr = "exp(-0.1*x)";
    double T = 1.0;
    double r = 0.1;
    double R = 50.0;

    std::size_t n_x = 400;
    std::size_t n_t = 400;
    std::size_t n_paths = 20000;
    std::size_t n_steps = 400;

    std::string output_dir = "out";
    std::size_t snapshot_stride = 0;
    std::size_t interior_trim = 5;
    std::uint64_t master_seed = 20260824;
    int n_threads = 1;
};

// Parses the file; unknown sections/keys and malformed values raise
// ConfigError with a line diagnostic.
RunConfig parse_config_file(const std::string& path);

// Applies the FKVX_SEED environment override, when set.
void apply_env_overrides(RunConfig& config);

// Materializes the model: builtin case or user expressions (derivatives of
// user exponents via finite differences).
ModelSpec build_model(const RunConfig& config);

} // namespace fkvx
