// Acceptance gate: ten end-to-end checks, one [PASS]/[FAIL] line each.
//
// Every tolerance is pinned as a named constant next to the check that uses
// it. Checks that depend on shipped artifacts read them from the source tree
// (configs/, data/mnist); the digits benchmark fails honestly when the image
// files are absent. Run with integer arguments to restrict to a subset of
// criteria, e.g. `acceptance 1 2 10`.

#include "orbit/augmentation.hpp"
#include "orbit/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include <json.hpp>

using namespace orbit;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string source_dir() { return ORBITFIT_SOURCE_DIR; }

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof(buf), f, ap);
    va_end(ap);
    return buf;
}

json load_config(const std::string& name) {
    return json::parse(read_text(source_dir() + "/configs/" + name));
}

// ---------------------------------------------------------------- criterion 1
// Augmented KRR on the plain kernel (|G| copies per sample, ridge scaled to
// |G|*lambda) must reproduce invariant-kernel KRR at level lambda.
Outcome criterion1() {
    // Convention check on an instance solvable by hand: one training point
    // (sqrt3, 0, 0) on the radius-sqrt3 sphere, cyclic shifts of the three
    // coordinates, h(u) = u, label c, ridge lambda. Augmentation gives the
    // three orthogonal axis points, whose plain Gram is the identity, ridge
    // |G|*lambda/d = lambda; solving the 3x3 system by hand gives the
    // predictor f(z) = c*sqrt3*(z1+z2+z3) / (3*(1+lambda)).
    const double kHandTol = 1e-10;
    {
        const DomainSpec dom3 = DomainSpec::sphere(3);
        const GroupSpec rot3 = GroupSpec::cyclic(3);
        Vec coeffs(2);
        coeffs << 0.0, 1.0;
        const KernelSpec h =
            KernelSpec::poly(coeffs, dom3, GroupSpec::trivial(3),
                             InnerNorm::inner_over_d);
        Mat X(1, 3);
        X << std::sqrt(3.0), 0.0, 0.0;
        Vec y(1);
        const double c = 1.3, lambda = 0.4;
        y << c;
        Mat Z(3, 3);
        Z << 1.0, 1.0, 1.0, std::sqrt(3.0), 0.0, 0.0, -0.3, 1.2, 0.8;
        for (Index i = 0; i < Z.rows(); ++i)
            Z.row(i) *= std::sqrt(3.0) / Z.row(i).norm();
        const RidgeFit aug = fit_augmented_krr(X, y, h, rot3, lambda);
        const Vec got = predict(aug, Z);
        for (Index i = 0; i < Z.rows(); ++i) {
            const double want = c * std::sqrt(3.0) *
                                (Z(i, 0) + Z(i, 1) + Z(i, 2)) /
                                (3.0 * (1 + lambda));
            if (std::abs(got(i) - want) > kHandTol)
                return {false, fmt("hand-solved convention instance violated: "
                                   "|%.3e - %.3e| > %.0e",
                                   got(i), want, kHandTol)};
        }
    }

    // Main instance: d=8, n=12, cyclic shifts, depth-3 relu arc kernel,
    // lambda=0.1, 50 test points.
    const double kRelTol = 1e-8;
    const DomainSpec dom = DomainSpec::sphere(8);
    const GroupSpec group = GroupSpec::cyclic(8);
    const KernelSpec base =
        KernelSpec::ntk(3, dom, GroupSpec::trivial(8), InnerNorm::inner_over_d);
    const Mat X = sample_domain(dom, 12, 1, "acceptance-c1-train");
    CounterRng rng(1, "acceptance-c1-labels");
    Vec y(12);
    for (Index i = 0; i < 12; ++i) y(i) = rng.normal();
    const Mat X_test = sample_domain(dom, 50, 1, "acceptance-c1-test");
    const double gap = check_prop2_equivalence(X, y, base, group, 0.1, X_test);
    const double tol = kRelTol * y.cwiseAbs().maxCoeff();
    return {gap <= tol, fmt("max prediction gap %.3e <= %.3e on 50 points, "
                            "hand-solved convention verified",
                            gap, tol)};
}

// ---------------------------------------------------------------- criterion 2
// Orthonormality of the inner-product polynomial bases.
double subset_sum_oracle(int d, int k, int s) {
    // (1/C(d,k)) * e_k(z) for z holding (d+s)/2 ones and (d-s)/2 minus-ones.
    std::vector<double> e(static_cast<size_t>(k) + 1, 0.0);
    e[0] = 1.0;
    const int plus = (d + s) / 2;
    for (int i = 0; i < d; ++i) {
        const double z = i < plus ? 1.0 : -1.0;
        for (int j = std::min(i + 1, k); j >= 1; --j)
            e[static_cast<size_t>(j)] += z * e[static_cast<size_t>(j) - 1];
    }
    return e[static_cast<size_t>(k)] / std::exp(log_binomial(d, k));
}

Outcome criterion2() {
    const double kSphereTol = 1e-8;
    const int d = 30, k_max = 6;
    const DomainSpec sphere = DomainSpec::sphere(d);
    const GegenbauerBasis basis(sphere, k_max);
    const QuadratureRule quad =
        gauss_jacobi_symmetric(40, (d - 3) / 2.0);
    double sphere_dev = 0.0;
    for (int j = 0; j <= k_max; ++j)
        for (int k = 0; k <= k_max; ++k) {
            double ip = 0.0;
            for (Index q = 0; q < quad.nodes.size(); ++q)
                ip += quad.weights(q) * basis.eval_t(j, quad.nodes(q)) *
                      basis.eval_t(k, quad.nodes(q));
            const double want = j == k ? 1.0 : 0.0;
            sphere_dev = std::max(
                sphere_dev,
                std::abs(basis_dimension(sphere, k) * ip - want));
        }

    const double kCubeTol = 1e-12;
    double cube_dev = 0.0;
    for (int dc : {6, 10, 14}) {
        const DomainSpec cube = DomainSpec::hypercube(dc);
        const GegenbauerBasis cb(cube, 4);
        for (int k = 0; k <= 4; ++k)
            for (int s = -dc; s <= dc; s += 2)
                cube_dev = std::max(
                    cube_dev,
                    std::abs(cb.eval(k, s) - subset_sum_oracle(dc, k, s)));
    }

    return {sphere_dev <= kSphereTol && cube_dev <= kCubeTol,
            fmt("sphere d=30 j,k<=6 max dev %.3e <= %.0e; hypercube vs "
                "subset sums d<=14 k<=4 max dev %.3e <= %.0e",
                sphere_dev, kSphereTol, cube_dev, kCubeTol)};
}

// ---------------------------------------------------------------- criterion 3
// Monte-Carlo invariant-subspace dimension vs the exact cycle-count value.
Outcome criterion3() {
    const double kAbsTol = 0.6; // 10% of the exact value 6
    const DomainSpec cube = DomainSpec::hypercube(12);
    const GroupSpec group = GroupSpec::cyclic(12);
    const double exact = exact_cyclic_degeneracy_hypercube(12, 2);
    if (exact != 6.0)
        return {false, fmt("exact necklace count is %.1f, expected 6", exact)};
    const auto [est, se] = estimate_degeneracy(cube, group, 2, 100000, 1);
    const double dev = std::abs(est - exact);
    return {dev <= 3.0 * se && dev <= kAbsTol,
            fmt("D_hat=%.4f vs 6 exact: |dev|=%.4f <= 3*se=%.4f and <= %.1f",
                est, dev, 3.0 * se, kAbsTol)};
}

// ---------------------------------------------------------------- criterion 4
// Rescaled degree-1 relu coefficient at d=2000 vs its Gaussian limit 1/2.
Outcome criterion4() {
    const double kRelTol = 0.02;
    const ScalarFn relu = [](double t) { return t > 0.0 ? t : 0.0; };
    const Vec vals = gegenbauer_hermite_limit_check(relu, 1, {2000});
    const double rel = std::abs(vals(0) - 0.5) / 0.5;
    return {rel <= kRelTol,
            fmt("xi_{d,1}*sqrt(B*1!) = %.6f vs 1/2, rel dev %.4f <= %.2f",
                vals(0), rel, kRelTol)};
}

// ---------------------------------------------------------------- criterion 5
// Empirical wide convolutional tangent kernel vs the analytic average.
Outcome criterion5() {
    const double kRelTol = 0.03;
    const int width = 1 << 14, n_seeds = 8, n_pairs = 5;
    const DomainSpec dom = DomainSpec::sphere(16);
    const GroupSpec group = GroupSpec::cyclic(16);
    const KernelSpec analytic =
        KernelSpec::ntk(2, dom, group, InnerNorm::inner_over_d);
    const Mat P = sample_domain(dom, 2 * n_pairs, 1, "acceptance-c5-pairs");
    double worst = 0.0;
    for (int p = 0; p < n_pairs; ++p) {
        const Vec x = P.row(2 * p).transpose();
        const Vec y = P.row(2 * p + 1).transpose();
        const double want = kernel_value(analytic, x, y);
        double mean = 0.0;
        for (int s = 0; s < n_seeds; ++s)
            mean += empirical_cntk(width, group, x, y, 200 + s);
        mean /= n_seeds;
        worst = std::max(worst, std::abs(mean - want) / std::abs(want));
    }
    return {worst <= kRelTol,
            fmt("width 2^14, 5 pairs x 8 seeds: max rel gap %.4f <= %.2f",
                worst, kRelTol)};
}

// ---------------------------------------------------------------- criterion 6
// Learning curves: the invariant kernel needs roughly d times fewer samples.
std::map<Index, double> risk_by_n(const std::string& config_name,
                                  double* norm_sq) {
    const ExperimentConfig cfg = parse_config(load_config(config_name));
    *norm_sq = target_norm_sq(cfg.target, cfg.domain);
    const std::string csv = run_risk_curve(cfg);
    std::map<Index, double> out;
    std::string line;
    for (size_t pos = 0; pos < csv.size();) {
        const size_t nl = csv.find('\n', pos);
        line = csv.substr(pos, nl == std::string::npos ? nl : nl - pos);
        pos = nl == std::string::npos ? csv.size() : nl + 1;
        if (line.empty() || line[0] == '#' || line[0] == 'n') continue;
        long n = 0;
        double risk = 0.0;
        if (std::sscanf(line.c_str(), "%ld,%lf", &n, &risk) == 2)
            out[n] = risk;
    }
    return out;
}

Outcome criterion6() {
    const double kLearned = 0.1;   // normalized risk after the transition
    const double kStuck = 0.5;     // normalized risk before it
    const double kFactor = 2.0;    // invariant vs standard at equal n
    const double kPlateauLo = 0.85, kPlateauHi = 1.15;

    double lin_norm = 0.0, quad_norm = 0.0, tmp = 0.0;
    const auto lin_cyc = risk_by_n("fig1_lin_cyclic.json", &lin_norm);
    const auto lin_std = risk_by_n("fig1_lin_standard.json", &tmp);
    const auto quad_cyc = risk_by_n("fig1_quad_cyclic.json", &quad_norm);
    const auto quad_std = risk_by_n("fig1_quad_standard.json", &tmp);

    const double lin_cyc_100 = lin_cyc.at(100) / lin_norm;
    const double lin_std_10 = lin_std.at(10) / lin_norm;
    const double quad_cyc_600 = quad_cyc.at(600) / quad_norm;
    const double quad_std_600 = quad_std.at(600) / quad_norm;
    const double quad_std_10 = quad_std.at(10) / quad_norm;
    const double quad_std_100 = quad_std.at(100) / quad_norm;

    const bool transition =
        lin_cyc_100 < kLearned && lin_std_10 > kStuck;
    const bool factor = kFactor * quad_cyc_600 <= quad_std_600;
    // Plateau points are taken where a pre-transition plateau is actually
    // resolvable at d=30: the non-invariant kernel before its degree-1
    // transition (n=10 for both targets) and between its degree-1 and
    // degree-2 transitions (n=100, quadratic target).  The invariant
    // kernel's own transitions sit at n = O(1) and n = O(d), leaving no
    // measurable plateau window at this dimension.
    const auto plateau = [&](double v) {
        return v >= kPlateauLo && v <= kPlateauHi;
    };
    const bool plateaus = plateau(lin_std_10) && plateau(quad_std_10) &&
                          plateau(quad_std_100);
    return {transition && factor && plateaus,
            fmt("deg-1: inv@100=%.3f<%.1f, std@10=%.3f>%.1f; deg-2 @600: "
                "inv=%.3f vs std=%.3f (factor %.1f); plateaus %.3f/%.3f/%.3f "
                "in [%.2f,%.2f]",
                lin_cyc_100, kLearned, lin_std_10, kStuck, quad_cyc_600,
                quad_std_600, quad_cyc_600 > 0 ? quad_std_600 / quad_cyc_600
                                               : 0.0,
                lin_std_10, quad_std_10, quad_std_100, kPlateauLo,
                kPlateauHi)};
}

// ---------------------------------------------------------------- criterion 7
// Diagonal-ratio concentration improves with dimension (frozen seed).
Outcome criterion7() {
    const ExperimentConfig cfg = parse_config(load_config("concentration.json"));
    const json rep = json::parse(run_concentration(cfg));
    std::string meds;
    std::vector<double> values;
    for (const auto& row : rep.at("rows")) {
        values.push_back(row.at("sup_dev_median").get<double>());
        meds += fmt("%s%.3f", meds.empty() ? "" : " > ", values.back());
    }
    const bool mono = rep.at("monotone_decreasing").get<bool>();
    return {mono && values.size() == 3,
            fmt("3-run medians of sup|ratio-1| over d in {50,100,200}: %s "
                "(strictly decreasing: %s)",
                meds.c_str(), mono ? "yes" : "no")};
}

// ---------------------------------------------------------------- criterion 8
// Output-symmetrization sandwich for a standard-kernel fit.
Outcome criterion8() {
    const DomainSpec dom = DomainSpec::sphere(30);
    const TargetSpec target = TargetSpec::quad(30);
    const KernelSpec kernel =
        KernelSpec::ntk(5, dom, GroupSpec::trivial(30),
                        InnerNorm::inner_over_d);
    const Mat X = sample_domain(dom, 400, 1, "acceptance-c8-train");
    const Vec y = eval_target(target, X);
    RidgeConfig rc;
    rc.lambda = 0.0;
    rc.alpha = 0.0;
    const RidgeFit fit = fit_krr(gram(kernel, X), y, rc);
    const SandwichReport rep =
        check_prop1_sandwich(target, fit, GroupSpec::cyclic(30), 1, 10000, 1);
    return {rep.ok(),
            fmt("lower %.4f <= sym %.4f (+/-%.4f) <= plain %.4f (+/-%.4f) "
                "<= upper %.4f, within 3 stderr",
                rep.lower_bound, rep.sym_err, rep.sym_err_stderr, rep.fit_err,
                rep.fit_err_stderr, rep.upper_bound)};
}

// ---------------------------------------------------------------- criterion 9
// Shifted-digits benchmark: the cyclic kernel must beat the standard kernel.
Outcome criterion9() {
    const double kMargin = 0.15;  // frozen from the pilot (observed gap 0.409)
    const double kCeiling = 0.6;
    json cfg_json = load_config("mnist.json");
    // Resolve the shipped relative paths against the source tree (or the
    // ORBITFIT_MNIST_DIR override).
    const char* env = std::getenv("ORBITFIT_MNIST_DIR");
    for (const char* key :
         {"train_images", "train_labels", "test_images", "test_labels"}) {
        const std::string orig = cfg_json.at("mnist").at(key).get<std::string>();
        if (env != nullptr)
            cfg_json["mnist"][key] =
                (fs::path(env) / fs::path(orig).filename()).string();
        else if (fs::path(orig).is_relative())
            cfg_json["mnist"][key] = source_dir() + "/" + orig;
    }
    for (const char* key :
         {"train_images", "train_labels", "test_images", "test_labels"}) {
        const std::string p = cfg_json.at("mnist").at(key).get<std::string>();
        if (!fs::exists(p))
            return {false, "image files not found (" + p +
                               "); place the four IDX files under data/mnist "
                               "or set ORBITFIT_MNIST_DIR"};
    }
    const ExperimentConfig cfg = parse_config(cfg_json);
    const std::string csv = run_mnist(cfg);
    double std_err = -1.0, cyc_err = -1.0;
    for (size_t pos = 0; pos < csv.size();) {
        const size_t nl = csv.find('\n', pos);
        const std::string line =
            csv.substr(pos, nl == std::string::npos ? nl : nl - pos);
        pos = nl == std::string::npos ? csv.size() : nl + 1;
        double e = 0.0;
        if (std::sscanf(line.c_str(), "%*d,%*d,%lf", &e) != 1) continue;
        if (line.find("standard") != std::string::npos) std_err = e;
        if (line.find("cyclic") != std::string::npos) cyc_err = e;
    }
    if (std_err < 0 || cyc_err < 0)
        return {false, "could not parse the benchmark rows"};
    const bool direction = cyc_err <= std_err - kMargin;
    const bool below = cyc_err < kCeiling && std_err < kCeiling;
    return {direction && below,
            fmt("T=784 n=2000: cyclic %.3f vs standard %.3f (margin %.3f >= "
                "%.2f: %s); both < %.1f: %s",
                cyc_err, std_err, std_err - cyc_err, kMargin,
                direction ? "yes" : "no", kCeiling, below ? "yes" : "no")};
}

// --------------------------------------------------------------- criterion 10
// Byte-identical reruns of every CLI command.
struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("orbit-acceptance-" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const std::string& name) const {
        return (path / name).string();
    }
};

int run_cli(const std::string& args) {
    const std::string cmd = std::string(ORBITFIT_BIN) + " " + args;
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

Outcome criterion10() {
    TempDir tmp;
    // Synthetic digit files make the mnist leg independent of the real data.
    {
        CounterRng rng(9, "acceptance-c10-images");
        IdxTensor imgs;
        imgs.kind = IdxKind::images;
        imgs.rows = 28;
        imgs.cols = 28;
        imgs.data = Mat(60, 784);
        for (Index i = 0; i < imgs.data.rows(); ++i)
            for (Index j = 0; j < imgs.data.cols(); ++j)
                imgs.data(i, j) = double(rng.uniform_below(256));
        IdxTensor labs;
        labs.kind = IdxKind::labels;
        for (int i = 0; i < 60; ++i)
            labs.labels.push_back(std::uint8_t(rng.uniform_below(10)));
        save_idx(tmp.file("images"), imgs);
        save_idx(tmp.file("labels"), labs);
    }

    std::vector<std::pair<std::string, json>> cases;
    cases.emplace_back(
        "fit", json{{"experiment", "fit"},
                    {"domain", {{"kind", "sphere"}, {"d", 8}}},
                    {"group", {{"kind", "cyc1d"}}},
                    {"kernel", {{"base", "ntk"}, {"depth", 2}}},
                    {"target", {{"kind", "lin"}}},
                    {"n", 20},
                    {"lambda", 0.1},
                    {"n_test", 100},
                    {"seed", 7}});
    cases.emplace_back(
        "risk-curve", json{{"experiment", "risk-curve"},
                           {"domain", {{"kind", "sphere"}, {"d", 8}}},
                           {"group", {{"kind", "cyc1d"}}},
                           {"kernel", {{"base", "ntk"}, {"depth", 2}}},
                           {"target", {{"kind", "lin"}}},
                           {"n_grid", {5, 10}},
                           {"lambda", 0.0},
                           {"n_test", 100},
                           {"repetitions", 2},
                           {"seed", 7}});
    cases.emplace_back("degeneracy",
                       json{{"experiment", "degeneracy"},
                            {"domain", {{"kind", "hypercube"}, {"d", 10}}},
                            {"group", {{"kind", "cyc1d"}}},
                            {"k", 2},
                            {"n_mc", 4000},
                            {"n_points", 30},
                            {"seed", 7}});
    cases.emplace_back("concentration",
                       json{{"experiment", "concentration"},
                            {"domain", {{"kind", "hypercube"}, {"d", 10}}},
                            {"group", {{"kind", "cyc1d"}}},
                            {"k", 2},
                            {"n_points", 25},
                            {"runs", 3},
                            {"d_grid", {10, 20}},
                            {"seed", 7}});
    cases.emplace_back(
        "equivalence", json{{"experiment", "equivalence"},
                            {"domain", {{"kind", "sphere"}, {"d", 6}}},
                            {"group", {{"kind", "cyc1d"}}},
                            {"kernel", {{"base", "ntk"}, {"depth", 2}}},
                            {"n", 8},
                            {"lambda", 0.1},
                            {"n_test", 20},
                            {"seed", 7}});
    cases.emplace_back(
        "mnist", json{{"experiment", "mnist"},
                      {"kernel", {{"base", "ntk"}, {"depth", 2}}},
                      {"lambda", 0.0},
                      {"seed", 7},
                      {"mnist",
                       {{"train_images", tmp.file("images")},
                        {"train_labels", tmp.file("labels")},
                        {"test_images", tmp.file("images")},
                        {"test_labels", tmp.file("labels")},
                        {"T", 20},
                        {"n_train", 40},
                        {"n_test", 20},
                        {"shift_seed", 3}}}});

    int verified = 0;
    for (const auto& [cmd, cfg] : cases) {
        const std::string cfg_path = tmp.file(cmd + ".json");
        write_text(cfg_path, cfg.dump(2) + "\n");
        const std::string out1 = tmp.file(cmd + "-1.out");
        const std::string out2 = tmp.file(cmd + "-2.out");
        const std::string args = cmd + " --config " + cfg_path;
        if (run_cli(args + " --out " + out1 + " 2> /dev/null") != 0 ||
            run_cli(args + " --out " + out2 + " 2> /dev/null") != 0)
            return {false, cmd + ": command failed"};
        if (read_text(out1) != read_text(out2))
            return {false, cmd + ": reruns differ"};
        ++verified;
    }
    return {true, fmt("%d commands rerun byte-identically", verified)};
}

// -----------------------------------------------------------------------------

struct Criterion {
    int id;
    const char* label;
    Outcome (*fn)();
    double time_limit; // seconds; 0 = unlimited
};

} // namespace

int main(int argc, char** argv) {
    std::set<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));

    const Criterion table[] = {
        {1, "data augmentation matches the invariant kernel", criterion1, 10},
        {2, "inner-product polynomial bases are orthonormal", criterion2, 0},
        {3, "invariant-subspace dimension matches the exact count", criterion3,
         30},
        {4, "rescaled spectral coefficients reach the Gaussian limit",
         criterion4, 0},
        {5, "wide random convolutional features match the analytic kernel",
         criterion5, 120},
        {6, "invariant kernels learn fixed-degree targets earlier", criterion6,
         1200},
        {7, "diagonal ratios concentrate as dimension grows", criterion7, 0},
        {8, "output symmetrization obeys the error sandwich", criterion8, 0},
        {9, "cyclic kernel beats the standard kernel on shifted digits",
         criterion9, 900},
        {10, "identical configs reproduce byte-identical outputs", criterion10,
         0},
    };

    int passed = 0, ran = 0;
    for (const Criterion& c : table) {
        if (!wanted.empty() && wanted.count(c.id) == 0) continue;
        ++ran;
        Outcome out;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            out = c.fn();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          t0)
                .count();
        if (out.pass && c.time_limit > 0 && secs > c.time_limit) {
            out.pass = false;
            out.detail += fmt("; over the %.0f s budget", c.time_limit);
        }
        std::printf("[%s] criterion %d: %s (%s; %.1f s)\n",
                    out.pass ? "PASS" : "FAIL", c.id, c.label,
                    out.detail.c_str(), secs);
        std::fflush(stdout);
        if (out.pass) ++passed;
    }
    std::printf("acceptance: %d/%d criteria passed\n", passed, ran);
    return passed == ran ? 0 : 1;
}
