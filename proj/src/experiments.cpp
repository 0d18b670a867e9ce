#include "orbit/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <sstream>

namespace orbit {

namespace {

using nlohmann::json;

// Independent derived seed per labeled sub-stream of one experiment.
uint64_t sub_seed(uint64_t base, const std::string& label) {
    return base ^ fnv1a(label);
}

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const char* where) {
    if (!j.is_object())
        throw ConfigError(std::string(where) + ": expected a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed) ok = ok || it.key() == k;
        if (!ok)
            throw ConfigError(std::string(where) + ": unknown key '" +
                              it.key() + "'");
    }
}

std::vector<Index> parse_index_grid(const json& j, const char* name) {
    if (!j.is_array() || j.empty())
        throw ConfigError(std::string(name) + ": expected a non-empty array");
    std::vector<Index> grid;
    for (const auto& v : j) {
        if (!v.is_number_integer())
            throw ConfigError(std::string(name) + ": entries must be integers");
        grid.push_back(v.get<Index>());
    }
    for (size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] < 1)
            throw ConfigError(std::string(name) + ": entries must be >= 1");
        if (i > 0 && grid[i] <= grid[i - 1])
            throw ConfigError(std::string(name) +
                              ": must be strictly increasing");
    }
    return grid;
}

std::string group_label(const GroupSpec& g) {
    std::string s = to_string(g.kind);
    switch (g.kind) {
    case GroupKind::trivial:
    case GroupKind::cyc1d: return s + ":" + std::to_string(g.d);
    case GroupKind::cyc2d:
        return s + ":" + std::to_string(g.d1) + "x" + std::to_string(g.d2);
    case GroupKind::shift_band:
        return s + ":" + std::to_string(g.d) + ":M" +
               std::to_string(g.quad_m);
    }
    return s;
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

json finite_or_null(double v) {
    return std::isfinite(v) ? json(v) : json(nullptr);
}

} // namespace

GroupSpec ExperimentConfig::make_group(int d) const {
    switch (group_kind) {
    case GroupKind::trivial: return GroupSpec::trivial(d);
    case GroupKind::cyc1d: return GroupSpec::cyclic(d);
    case GroupKind::cyc2d:
        if (group_d1 * group_d2 != d)
            throw ConfigError("group: cyc2d factors " +
                              std::to_string(group_d1) + "x" +
                              std::to_string(group_d2) +
                              " do not multiply to d=" + std::to_string(d));
        return GroupSpec::cyclic2d(group_d1, group_d2);
    case GroupKind::shift_band: return GroupSpec::shift_band(d, group_m);
    }
    throw ConfigError("group: unknown kind");
}

ScalarFn ExperimentConfig::activation_fn() const {
    if (activation == "relu")
        return [](double t) { return t > 0.0 ? t : 0.0; };
    if (activation == "tanh")
        return [](double t) { return std::tanh(t); };
    if (activation == "sign")
        return [](double t) { return t > 0.0 ? 1.0 : (t < 0.0 ? -1.0 : 0.0); };
    if (activation == "identity")
        return [](double t) { return t; };
    throw ConfigError("features: unknown activation '" + activation + "'");
}

namespace {

KernelSpec build_kernel(const ExperimentConfig& cfg, const GroupSpec& group) {
    switch (cfg.base) {
    case KernelBase::ntk:
        return KernelSpec::ntk(cfg.depth, cfg.domain, group, cfg.norm);
    case KernelBase::spectral: {
        auto sp = std::make_shared<ActivationSpectrum>(activation_spectrum(
            cfg.activation_fn(), cfg.domain, cfg.k_max));
        return KernelSpec::spectral(std::move(sp), group, cfg.norm);
    }
    case KernelBase::poly: {
        Vec c(static_cast<Index>(cfg.poly_coeffs.size()));
        for (Index i = 0; i < c.size(); ++i)
            c(i) = cfg.poly_coeffs[static_cast<size_t>(i)];
        return KernelSpec::poly(std::move(c), cfg.domain, group, cfg.norm);
    }
    }
    throw ConfigError("kernel: unknown base");
}

} // namespace

KernelSpec ExperimentConfig::make_kernel() const {
    return build_kernel(*this, make_group(domain.d));
}

KernelSpec ExperimentConfig::make_kernel_trivial() const {
    return build_kernel(*this, GroupSpec::trivial(domain.d));
}

RidgeConfig ExperimentConfig::ridge() const {
    RidgeConfig rc;
    rc.lambda = lambda;
    rc.alpha = alpha_explicit ? alpha : make_group(domain.d).alpha();
    rc.mode = mode;
    return rc;
}

ExperimentConfig parse_config(const json& merged) {
    try {
        ExperimentConfig cfg;
        cfg.canonical = merged;
        check_keys(merged,
                   {"experiment", "domain", "group", "kernel", "mode",
                    "features", "target", "n", "n_grid", "lambda", "alpha",
                    "noise_sd", "n_test", "repetitions", "seed", "threads",
                    "degrees", "k", "n_mc", "n_points", "runs", "d_grid",
                    "mnist", "out"},
                   "config");

        if (!merged.contains("experiment"))
            throw ConfigError("config: 'experiment' is required");
        cfg.experiment = merged.at("experiment").get<std::string>();
        static const char* kKinds[] = {"fit",        "risk-curve",
                                       "mnist",      "degeneracy",
                                       "concentration", "equivalence"};
        bool known = false;
        for (const char* k : kKinds) known = known || cfg.experiment == k;
        if (!known)
            throw ConfigError("config: unknown experiment '" +
                              cfg.experiment + "'");

        if (merged.contains("domain")) {
            const json& d = merged.at("domain");
            check_keys(d, {"kind", "d"}, "domain");
            const std::string kind = d.value("kind", "sphere");
            const int dim = d.value("d", 30);
            if (kind == "sphere")
                cfg.domain = DomainSpec::sphere(dim);
            else if (kind == "hypercube")
                cfg.domain = DomainSpec::hypercube(dim);
            else
                throw ConfigError("domain: unknown kind '" + kind + "'");
            cfg.domain.validate();
        }

        if (merged.contains("group")) {
            const json& g = merged.at("group");
            check_keys(g, {"kind", "d1", "d2", "M"}, "group");
            const std::string kind = g.value("kind", "trivial");
            if (kind == "trivial")
                cfg.group_kind = GroupKind::trivial;
            else if (kind == "cyc1d")
                cfg.group_kind = GroupKind::cyc1d;
            else if (kind == "cyc2d")
                cfg.group_kind = GroupKind::cyc2d;
            else if (kind == "shift_band")
                cfg.group_kind = GroupKind::shift_band;
            else
                throw ConfigError("group: unknown kind '" + kind + "'");
            cfg.group_d1 = g.value("d1", 0);
            cfg.group_d2 = g.value("d2", 0);
            cfg.group_m = g.value("M", 0);
        }

        if (merged.contains("kernel")) {
            const json& k = merged.at("kernel");
            check_keys(k, {"base", "depth", "coeffs", "k_max", "normalization"},
                       "kernel");
            const std::string base = k.value("base", "ntk");
            if (base == "ntk")
                cfg.base = KernelBase::ntk;
            else if (base == "spectral")
                cfg.base = KernelBase::spectral;
            else if (base == "poly")
                cfg.base = KernelBase::poly;
            else
                throw ConfigError("kernel: unknown base '" + base + "'");
            cfg.depth = k.value("depth", 2);
            if (cfg.depth < 1) throw ConfigError("kernel: depth must be >= 1");
            cfg.k_max = k.value("k_max", 12);
            if (k.contains("coeffs"))
                cfg.poly_coeffs = k.at("coeffs").get<std::vector<double>>();
            if (cfg.base == KernelBase::poly && cfg.poly_coeffs.empty())
                throw ConfigError("kernel: poly base needs 'coeffs'");
            const std::string nrm = k.value("normalization", "inner_over_d");
            if (nrm == "inner_over_d")
                cfg.norm = InnerNorm::inner_over_d;
            else if (nrm == "cosine")
                cfg.norm = InnerNorm::cosine;
            else
                throw ConfigError("kernel: unknown normalization '" + nrm +
                                  "'");
        }

        const std::string mode = merged.value("mode", "krr");
        if (mode == "krr")
            cfg.mode = RidgeMode::krr;
        else if (mode == "rfrr")
            cfg.mode = RidgeMode::rfrr;
        else
            throw ConfigError("config: unknown mode '" + mode + "'");

        if (merged.contains("features")) {
            const json& f = merged.at("features");
            check_keys(f, {"N", "activation"}, "features");
            cfg.features = f.value("N", 0);
            cfg.activation = f.value("activation", "relu");
            cfg.activation_fn(); // validates the name
        }
        if (cfg.mode == RidgeMode::rfrr && cfg.features < 1)
            throw ConfigError("config: rfrr mode needs features.N >= 1");

        if (merged.contains("target")) {
            const json& t = merged.at("target");
            check_keys(t, {"kind", "degree"}, "target");
            const std::string kind = t.value("kind", "lin");
            const Index d = cfg.domain.d;
            if (kind == "lin")
                cfg.target = TargetSpec::lin(d);
            else if (kind == "quad")
                cfg.target = TargetSpec::quad(d);
            else if (kind == "cube")
                cfg.target = TargetSpec::cube(d);
            else if (kind == "cyclic_monomial")
                cfg.target = TargetSpec::cyclic_monomial(d, t.value("degree", 1));
            else
                throw ConfigError("target: unknown kind '" + kind + "'");
            cfg.target.validate();
            cfg.has_target = true;
        }

        bool n_given = false;
        if (merged.contains("n") && merged.contains("n_grid"))
            throw ConfigError("config: give 'n' or 'n_grid', not both");
        if (merged.contains("n")) {
            const Index n = merged.at("n").get<Index>();
            if (n < 1) throw ConfigError("config: n must be >= 1");
            cfg.n_grid = {n};
            n_given = true;
        } else if (merged.contains("n_grid")) {
            cfg.n_grid = parse_index_grid(merged.at("n_grid"), "n_grid");
            n_given = true;
        } else {
            cfg.n_grid = {100};
        }

        cfg.lambda = merged.value("lambda", 0.0);
        if (cfg.lambda < 0.0)
            throw ConfigError("config: lambda must be >= 0");
        if (merged.contains("alpha")) {
            cfg.alpha = merged.at("alpha").get<double>();
            cfg.alpha_explicit = true;
        }
        cfg.noise_sd = merged.value("noise_sd", 0.0);
        if (cfg.noise_sd < 0.0)
            throw ConfigError("config: noise_sd must be >= 0");
        cfg.n_test = merged.value("n_test", Index(1000));
        if (cfg.n_test < 1) throw ConfigError("config: n_test must be >= 1");
        cfg.repetitions = merged.value("repetitions", 1);
        if (cfg.repetitions < 1)
            throw ConfigError("config: repetitions must be >= 1");
        cfg.seed = merged.value("seed", uint64_t(0));
        cfg.threads = merged.value("threads", 1);
        if (cfg.threads < 1)
            throw ConfigError("config: threads must be >= 1");

        if (merged.contains("degrees") && merged.contains("k"))
            throw ConfigError("config: give 'degrees' or 'k', not both");
        if (merged.contains("k")) {
            cfg.degrees = {merged.at("k").get<int>()};
        } else if (merged.contains("degrees")) {
            cfg.degrees = merged.at("degrees").get<std::vector<int>>();
            if (cfg.degrees.empty())
                throw ConfigError("config: degrees must be non-empty");
        }
        for (int k : cfg.degrees)
            if (k < 0) throw ConfigError("config: degrees must be >= 0");

        cfg.n_mc = merged.value("n_mc", Index(100000));
        if (cfg.n_mc < 2) throw ConfigError("config: n_mc must be >= 2");
        cfg.n_points = merged.value("n_points", Index(100));
        if (cfg.n_points < 1)
            throw ConfigError("config: n_points must be >= 1");
        cfg.runs = merged.value("runs", 3);
        if (cfg.runs < 1) throw ConfigError("config: runs must be >= 1");
        if (merged.contains("d_grid")) {
            cfg.d_grid.clear();
            for (Index v : parse_index_grid(merged.at("d_grid"), "d_grid"))
                cfg.d_grid.push_back(static_cast<int>(v));
        }

        if (merged.contains("mnist")) {
            const json& m = merged.at("mnist");
            check_keys(m,
                       {"train_images", "train_labels", "test_images",
                        "test_labels", "T", "t_grid", "n_train", "n_test",
                        "shift_seed", "cache_dir"},
                       "mnist");
            cfg.mnist.train_images = m.value("train_images", "");
            cfg.mnist.train_labels = m.value("train_labels", "");
            cfg.mnist.test_images = m.value("test_images", "");
            cfg.mnist.test_labels = m.value("test_labels", "");
            cfg.mnist.T = m.value("T", 784);
            cfg.mnist.n_train = m.value("n_train", Index(2000));
            cfg.mnist.n_test = m.value("n_test", Index(2000));
            cfg.mnist.shift_seed = m.value("shift_seed", cfg.seed);
            cfg.cache_dir = m.value("cache_dir", "");
            if (m.contains("t_grid")) {
                for (Index v : parse_index_grid(m.at("t_grid"), "t_grid"))
                    cfg.t_grid.push_back(static_cast<int>(v));
                for (int t : cfg.t_grid)
                    if (t < 1 || t > 784)
                        throw ConfigError("t_grid: entries must be in [1,784]");
            }
        }
        if (cfg.t_grid.empty()) cfg.t_grid = {cfg.mnist.T};

        if (cfg.experiment == "mnist") {
            cfg.mnist.validate();
            if (!n_given) cfg.n_grid = {cfg.mnist.n_train};
            if (cfg.n_grid.back() > cfg.mnist.n_train)
                throw ConfigError("config: n_grid exceeds mnist.n_train");
        }
        if ((cfg.experiment == "fit" || cfg.experiment == "risk-curve") &&
            !cfg.has_target)
            throw ConfigError("config: experiment '" + cfg.experiment +
                              "' needs a target");
        if (cfg.experiment == "fit" || cfg.experiment == "risk-curve" ||
            cfg.experiment == "equivalence" ||
            cfg.experiment == "degeneracy") {
            // Instantiating the group validates factor/oddness constraints.
            cfg.make_group(cfg.domain.d).validate(cfg.domain);
        }
        return cfg;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

namespace {

// One train-set fit at sample size n for repetition `rep`, shared by the fit
// and risk-curve runners. Labels are the noiseless target plus optional
// Gaussian noise; features (rfrr) are redrawn per repetition.
RidgeFit fit_instance(const ExperimentConfig& cfg, const KernelSpec& kernel,
                      Index n, int rep, int threads) {
    const std::string tag = "n" + std::to_string(n) + "-rep" +
                            std::to_string(rep);
    const Mat X = sample_domain(cfg.domain, n, cfg.seed, "train-" + tag);
    Vec y = eval_target(cfg.target, X);
    if (cfg.noise_sd > 0.0) {
        CounterRng rng(cfg.seed, "noise-" + tag);
        for (Index i = 0; i < y.size(); ++i)
            y(i) += cfg.noise_sd * rng.normal();
    }
    if (cfg.mode == RidgeMode::krr)
        return fit_krr(gram(kernel, X, threads), y, cfg.ridge());
    FeatureBank bank = sample_features(cfg.domain, cfg.features,
                                       cfg.activation_fn(),
                                       cfg.make_group(cfg.domain.d),
                                       sub_seed(cfg.seed, "features-" + tag));
    return fit_rfrr(design(bank, X, threads), y, cfg.ridge());
}

} // namespace

std::string run_fit(const ExperimentConfig& cfg) {
    const Index n = cfg.n_grid.front();
    const KernelSpec kernel = cfg.make_kernel();
    const RidgeFit fit = fit_instance(cfg, kernel, n, 0, cfg.threads);
    const RiskEstimate risk =
        estimate_risk(fit, target_fn(cfg.target), cfg.n_test,
                      sub_seed(cfg.seed, "fit-eval"), 0.0, cfg.threads);

    json out;
    out["config_hash"] = config_hash(cfg.canonical);
    out["experiment"] = "fit";
    out["mode"] = cfg.mode == RidgeMode::krr ? "krr" : "rfrr";
    out["model"] = cfg.mode == RidgeMode::krr
                       ? kernel.describe()
                       : "rf:" + cfg.activation + ":N" +
                             std::to_string(cfg.features) + "|" +
                             group_label(cfg.make_group(cfg.domain.d));
    out["d"] = cfg.domain.d;
    out["n"] = n;
    out["lambda"] = cfg.lambda;
    out["alpha"] = cfg.ridge().alpha;
    out["lambda_eff"] = fit.lambda_eff;
    out["train_mse"] = fit.train_mse;
    out["risk"] = {{"mse", risk.mse},
                   {"stderr", risk.stderr_mc},
                   {"n_test", risk.n_test}};
    out["seed"] = cfg.seed;
    return out.dump(2) + "\n";
}

std::string run_risk_curve(const ExperimentConfig& cfg) {
    const KernelSpec kernel = cfg.mode == RidgeMode::krr
                                  ? cfg.make_kernel()
                                  : KernelSpec{};
    std::ostringstream csv;
    csv << "# config_hash=" << config_hash(cfg.canonical) << "\n";
    csv << "n,mean_risk,sd_risk,reps,mean_train_mse\n";

    const int reps = cfg.repetitions;
    for (Index n : cfg.n_grid) {
        std::vector<double> risk(static_cast<size_t>(reps));
        std::vector<double> train(static_cast<size_t>(reps));
        const int inner_threads = reps > 1 ? 1 : cfg.threads;
        parallel_for(reps, cfg.threads, [&](Index lo, Index hi) {
            for (Index rep = lo; rep < hi; ++rep) {
                try {
                    const RidgeFit fit = fit_instance(
                        cfg, kernel, n, static_cast<int>(rep), inner_threads);
                    // A fixed evaluation seed shares one test sample across
                    // the whole curve, so points differ only through the
                    // fits.
                    const RiskEstimate r =
                        estimate_risk(fit, target_fn(cfg.target), cfg.n_test,
                                      cfg.seed, 0.0, inner_threads);
                    risk[static_cast<size_t>(rep)] = r.mse;
                    train[static_cast<size_t>(rep)] = fit.train_mse;
                } catch (const NumericError& e) {
                    throw NumericError("risk-curve (n=" + std::to_string(n) +
                                       ", rep=" + std::to_string(rep) +
                                       "): " + e.what());
                } catch (const ConfigError& e) {
                    throw ConfigError("risk-curve (n=" + std::to_string(n) +
                                      ", rep=" + std::to_string(rep) +
                                      "): " + e.what());
                }
            }
        });
        double mean = 0.0, train_mean = 0.0;
        for (double v : risk) mean += v;
        for (double v : train) train_mean += v;
        mean /= reps;
        train_mean /= reps;
        double sd = 0.0;
        if (reps > 1) {
            for (double v : risk) sd += (v - mean) * (v - mean);
            sd = std::sqrt(sd / (reps - 1));
        }
        csv << n << "," << format_g17(mean) << "," << format_g17(sd) << ","
            << reps << "," << format_g17(train_mean) << "\n";
    }
    return csv.str();
}

namespace {

// Cached cyclic-MNIST preparation: the processed matrices live next to a
// sidecar recording {T, omega, seed} plus the subset sizes; a sidecar
// mismatch forces a rebuild.
MnistData prepare_mnist_cached(const ExperimentConfig& cfg, int T) {
    MnistConfig mc = cfg.mnist;
    mc.T = T;
    if (cfg.cache_dir.empty()) return prepare_cyclic_mnist(mc);

    namespace fs = std::filesystem;
    const std::string base =
        (fs::path(cfg.cache_dir) / ("cyclic-mnist-T" + std::to_string(T)))
            .string();
    const std::string sidecar = base + ".json";
    const auto file = [&base](const char* part) {
        return base + "-" + part + ".bin";
    };

    if (fs::exists(sidecar)) {
        const json side = json::parse(read_text(sidecar));
        if (side.value("T", -1) == T &&
            side.value("seed", uint64_t(0)) == mc.shift_seed &&
            side.value("n_train", Index(-1)) == mc.n_train &&
            side.value("n_test", Index(-1)) == mc.n_test) {
            MnistData data;
            data.T = T;
            data.X_train = load_matrix(file("Xtrain"));
            data.X_test = load_matrix(file("Xtest"));
            data.y_train = load_matrix(file("ytrain"));
            data.y_test = load_matrix(file("ytest"));
            for (const auto& v : side.at("omega"))
                data.omega.push_back(v.get<Index>());
            return data;
        }
    }

    MnistData data = prepare_cyclic_mnist(mc);
    fs::create_directories(cfg.cache_dir);
    save_matrix(file("Xtrain"), data.X_train);
    save_matrix(file("Xtest"), data.X_test);
    save_matrix(file("ytrain"), data.y_train);
    save_matrix(file("ytest"), data.y_test);
    json side;
    side["T"] = T;
    side["omega"] = data.omega;
    side["seed"] = mc.shift_seed;
    side["n_train"] = mc.n_train;
    side["n_test"] = mc.n_test;
    write_text(sidecar, side.dump(2) + "\n");
    return data;
}

} // namespace

std::string run_mnist(const ExperimentConfig& cfg) {
    cfg.mnist.validate();
    std::ostringstream csv;
    csv << "# config_hash=" << config_hash(cfg.canonical) << "\n";
    csv << "T,n,classification_error,kernel\n";

    const DomainSpec ambient = DomainSpec::sphere(int(kMnistPixels));
    const KernelSpec kernels[2] = {
        KernelSpec::ntk(cfg.depth, ambient, GroupSpec::trivial(kMnistPixels),
                        InnerNorm::cosine),
        KernelSpec::ntk(cfg.depth, ambient,
                        GroupSpec::cyclic2d(kMnistSide, kMnistSide),
                        InnerNorm::cosine)};
    const char* names[2] = {"standard", "cyclic"};

    for (int T : cfg.t_grid) {
        const MnistData data = prepare_mnist_cached(cfg, T);
        const Index n_max = cfg.n_grid.back();
        // errors[kernel][grid index]
        std::vector<std::vector<double>> errors(2);
        for (int ki = 0; ki < 2; ++ki) {
            const KernelSpec& kernel = kernels[ki];
            const GramMatrix full =
                gram(kernel, data.X_train.topRows(n_max), cfg.threads);
            const Mat cross = cross_gram(kernel, data.X_train.topRows(n_max),
                                         data.X_test, cfg.threads);
            for (Index n : cfg.n_grid) {
                GramMatrix sub;
                sub.K = full.K.topLeftCorner(n, n);
                sub.kernel = kernel;
                sub.X = data.X_train.topRows(n);
                sub.fingerprint =
                    matrix_fingerprint(sub.X) ^ fnv1a(kernel.describe());
                RidgeConfig rc;
                rc.lambda = cfg.lambda;
                rc.alpha = cfg.alpha_explicit ? cfg.alpha
                                              : kernel.group.alpha();
                const RidgeFit fit = fit_krr(sub, data.y_train.head(n), rc);
                const Vec pred = cross.topRows(n).transpose() * fit.u;
                errors[static_cast<size_t>(ki)].push_back(
                    classification_error(pred, data.y_test));
            }
        }
        for (size_t gi = 0; gi < cfg.n_grid.size(); ++gi)
            for (int ki = 0; ki < 2; ++ki)
                csv << T << "," << cfg.n_grid[gi] << ","
                    << format_g17(errors[static_cast<size_t>(ki)][gi]) << ","
                    << names[ki] << "\n";
    }
    return csv.str();
}

std::string run_degeneracy(const ExperimentConfig& cfg) {
    const GroupSpec group = cfg.make_group(cfg.domain.d);
    const SpectrumReport report = build_spectrum_report(
        cfg.domain, group, cfg.degrees, cfg.n_mc, cfg.n_points, cfg.seed);

    json rows = json::array();
    for (const SpectrumRow& r : report.rows) {
        json row;
        row["k"] = r.k;
        row["B"] = r.B;
        row["D_estimate"] = r.D_estimate;
        row["D_stderr"] = r.D_stderr;
        row["D_exact"] = finite_or_null(r.D_exact);
        row["upsilon_mean"] = r.upsilon_mean;
        row["upsilon_sup_dev"] = r.upsilon_sup_dev;
        row["f_k"] = r.f_k;
        rows.push_back(std::move(row));
    }
    json out;
    out["config_hash"] = config_hash(cfg.canonical);
    out["experiment"] = "degeneracy";
    out["domain"] = {{"kind", to_string(cfg.domain.kind)},
                     {"d", cfg.domain.d}};
    out["group"] = group_label(group);
    out["n_mc"] = cfg.n_mc;
    out["n_points"] = cfg.n_points;
    out["seed"] = cfg.seed;
    out["rows"] = std::move(rows);
    return out.dump(2) + "\n";
}

std::string run_concentration(const ExperimentConfig& cfg) {
    const int k = cfg.degrees.size() == 1 ? cfg.degrees.front() : 2;
    json rows = json::array();
    double prev = std::numeric_limits<double>::infinity();
    bool monotone = true;
    for (int d : cfg.d_grid) {
        DomainSpec dom = cfg.domain;
        dom.d = d;
        dom.validate();
        const GroupSpec group = cfg.make_group(d);
        group.validate(dom);
        std::vector<double> sups, means;
        for (int run = 0; run < cfg.runs; ++run) {
            const auto [mean, sup] = upsilon_statistics(
                dom, group, k, cfg.n_points,
                sub_seed(cfg.seed, "concentration-d" + std::to_string(d) +
                                       "-run" + std::to_string(run)));
            sups.push_back(sup);
            means.push_back(mean);
        }
        const double sup_median = median_of(sups);
        json row;
        row["d"] = d;
        row["group"] = group_label(group);
        row["sup_dev_median"] = sup_median;
        row["sup_dev_runs"] = sups;
        row["upsilon_mean_median"] = median_of(means);
        rows.push_back(std::move(row));
        monotone = monotone && sup_median < prev;
        prev = sup_median;
    }
    json out;
    out["config_hash"] = config_hash(cfg.canonical);
    out["experiment"] = "concentration";
    out["domain_kind"] = to_string(cfg.domain.kind);
    out["k"] = k;
    out["n_points"] = cfg.n_points;
    out["runs"] = cfg.runs;
    out["seed"] = cfg.seed;
    out["rows"] = std::move(rows);
    out["monotone_decreasing"] = monotone;
    return out.dump(2) + "\n";
}

std::string run_equivalence(const ExperimentConfig& cfg) {
    const Index n = cfg.n_grid.front();
    const GroupSpec group = cfg.make_group(cfg.domain.d);
    const Mat X = sample_domain(cfg.domain, n, cfg.seed, "equivalence-train");
    Vec y(n);
    if (cfg.has_target) {
        y = eval_target(cfg.target, X);
    } else {
        CounterRng rng(cfg.seed, "equivalence-labels");
        for (Index i = 0; i < n; ++i) y(i) = rng.normal();
    }
    const Mat X_test =
        sample_domain(cfg.domain, cfg.n_test, cfg.seed, "equivalence-test");
    const KernelSpec base = cfg.make_kernel_trivial();
    const double gap = check_prop2_equivalence(X, y, base, group, cfg.lambda,
                                               X_test, cfg.threads);

    json out;
    out["config_hash"] = config_hash(cfg.canonical);
    out["experiment"] = "equivalence";
    out["d"] = cfg.domain.d;
    out["domain"] = to_string(cfg.domain.kind);
    out["group"] = group_label(group);
    out["kernel"] = base.describe();
    out["n"] = n;
    out["n_test"] = cfg.n_test;
    out["lambda"] = cfg.lambda;
    out["lambda_aug"] = double(group.size()) * cfg.lambda;
    out["max_gap"] = gap;
    out["max_abs_y"] = y.cwiseAbs().maxCoeff();
    out["seed"] = cfg.seed;
    return out.dump(2) + "\n";
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    if (cfg.experiment == "fit") return {run_fit(cfg), "json"};
    if (cfg.experiment == "risk-curve") return {run_risk_curve(cfg), "csv"};
    if (cfg.experiment == "mnist") return {run_mnist(cfg), "csv"};
    if (cfg.experiment == "degeneracy") return {run_degeneracy(cfg), "json"};
    if (cfg.experiment == "concentration")
        return {run_concentration(cfg), "json"};
    if (cfg.experiment == "equivalence")
        return {run_equivalence(cfg), "json"};
    throw ConfigError("run_experiment: unknown experiment '" +
                      cfg.experiment + "'");
}

} // namespace orbit
