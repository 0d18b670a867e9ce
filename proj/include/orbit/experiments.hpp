#ifndef ORBIT_EXPERIMENTS_HPP
#define ORBIT_EXPERIMENTS_HPP

#include "orbit/augmentation.hpp"
#include "orbit/mnist.hpp"
#include "orbit/regression.hpp"
#include "orbit/serialize.hpp"
#include "orbit/spectra.hpp"
#include "orbit/targets.hpp"

#include <string>
#include <vector>

#include <json.hpp>

namespace orbit {

// Config-driven experiment harness. Configs are JSON; parse_config validates
// against the schema below and fills documented defaults. Every runner is
// deterministic in (config, seed): identical inputs give byte-identical
// output text.
//
// Scheme (top-level keys; unknown keys are rejected):
//   experiment    "fit" | "risk-curve" | "mnist" | "degeneracy" |
//                 "concentration" | "equivalence"
//   domain        {"kind": "sphere"|"hypercube", "d": int}
//   group         {"kind": "trivial"|"cyc1d"|"cyc2d"|"shift_band",
//                  "d1": int, "d2": int, "M": int}
//   kernel        {"base": "ntk"|"spectral"|"poly", "depth": int,
//                  "coeffs": [..], "k_max": int,
//                  "normalization": "inner_over_d"|"cosine"}
//   mode          "krr" | "rfrr"
//   features      {"N": int, "activation": "relu"|"tanh"|"sign"|"identity"}
//   target        {"kind": "lin"|"quad"|"cube"|"cyclic_monomial",
//                  "degree": int}
//   n | n_grid    int | strictly increasing int array
//   lambda, alpha, noise_sd, n_test, repetitions, seed, threads
//   degrees | k   int array | int          (spectrum reports)
//   n_mc, n_points, runs, d_grid            (spectrum reports)
//   mnist         {"train_images", "train_labels", "test_images",
//                  "test_labels", "T", "t_grid", "n_train", "n_test",
//                  "shift_seed", "cache_dir"}
struct ExperimentConfig {
    std::string experiment;
    nlohmann::json canonical; // the merged config that run outputs are
                              // hashed against

    DomainSpec domain = DomainSpec::sphere(30);
    GroupKind group_kind = GroupKind::trivial;
    int group_d1 = 0, group_d2 = 0; // cyc2d factors
    int group_m = 0;                // shift_band quadrature size (0 = default)

    KernelBase base = KernelBase::ntk;
    int depth = 2;
    std::vector<double> poly_coeffs;
    int k_max = 12; // spectral truncation
    InnerNorm norm = InnerNorm::inner_over_d;

    RidgeMode mode = RidgeMode::krr;
    Index features = 0;
    std::string activation = "relu";

    bool has_target = false;
    TargetSpec target;

    std::vector<Index> n_grid;
    double lambda = 0.0;
    double alpha = 0.0;
    bool alpha_explicit = false; // default alpha is the group's exponent
    double noise_sd = 0.0;
    Index n_test = 1000;
    int repetitions = 1;
    uint64_t seed = 0;
    int threads = 1;

    std::vector<int> degrees = {0, 1, 2, 3};
    Index n_mc = 100000;
    Index n_points = 100;
    int runs = 3;
    std::vector<int> d_grid = {50, 100, 200};

    MnistConfig mnist;
    std::vector<int> t_grid;
    std::string cache_dir;

    // Group instance over a given ambient dimension (concentration sweeps
    // rebuild the group per d; other experiments use d = domain.d).
    GroupSpec make_group(int d) const;
    // The configured kernel with the configured group, or with the trivial
    // group of the same dimension (the "standard" baseline).
    KernelSpec make_kernel() const;
    KernelSpec make_kernel_trivial() const;
    // Ridge setup: configured alpha, or the group's degeneracy exponent.
    RidgeConfig ridge() const;
    ScalarFn activation_fn() const;
};

ExperimentConfig parse_config(const nlohmann::json& merged);

struct ExperimentResult {
    std::string text; // full output file payload
    std::string kind; // "csv" or "json"
};

// Dispatch on cfg.experiment. Individual runners are exposed for tests.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

std::string run_fit(const ExperimentConfig& cfg);          // json
std::string run_risk_curve(const ExperimentConfig& cfg);   // csv
std::string run_mnist(const ExperimentConfig& cfg);        // csv
std::string run_degeneracy(const ExperimentConfig& cfg);   // json
std::string run_concentration(const ExperimentConfig& cfg);// json
std::string run_equivalence(const ExperimentConfig& cfg);  // json

} // namespace orbit

#endif // ORBIT_EXPERIMENTS_HPP
