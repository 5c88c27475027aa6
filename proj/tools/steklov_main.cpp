// Command-line front end: Steklov spectra, convergence studies, eigenvalue
// maximization, eigenfunction fields, and derivative checks for star-shaped
// planar domains described by Fourier shape files {"a": [...], "b": [...]}.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include "steklov/errors.hpp"
#include "steklov/optimizer.hpp"
#include "steklov/shape_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace steklov;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct GlobalOptions {
    std::uint64_t rng_seed = 0x5eed5eedULL;
    int jobs = 1;
};

class Stopwatch {
public:
    double seconds() const { return std::chrono::duration<double>(clock::now() - start_).count(); }

private:
    using clock = std::chrono::steady_clock;
    clock::time_point start_ = clock::now();
};

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw SteklovError("cannot open for writing: " + path.string());
    out << std::setprecision(16);
    return out;
}

void emit_manifest(const fs::path& anchor, RunManifest manifest, const Stopwatch& watch) {
    manifest.wall_time_seconds = watch.seconds();
    write_manifest(anchor.string() + ".manifest.json", manifest);
}

SteklovSpectrum solve_for(const FourierShape& shape, int n, int count) {
    return solve_spectrum(assemble_pair(build_grid(shape, n)), count);
}

void write_matrix_csv(const fs::path& path, const Eigen::MatrixXd& M) {
    auto out = open_out(path);
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        for (Eigen::Index j = 0; j < M.cols(); ++j) out << (j ? "," : "") << M(i, j);
        out << "\n";
    }
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> values;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (!item.empty()) values.push_back(std::stoi(item));
    }
    return values;
}

// ---------------------------------------------------------------- spectrum

struct SpectrumArgs {
    std::string shape_file;
    int n = 256;
    int count = 20;
    std::string out;
    std::string csv;
    std::string dump_operators;
};

int cmd_spectrum(const SpectrumArgs& args) {
    Stopwatch watch;
    const FourierShape shape = read_shape(args.shape_file);
    const BoundaryGrid grid = build_grid(shape, args.n);
    const OperatorPair pair = assemble_pair(grid);

    RunManifest manifest{"spectrum", {args.shape_file}, {{"n", args.n}, {"count", args.count}}, {}, 0.0};
    if (!args.dump_operators.empty()) {
        write_matrix_csv(args.dump_operators + ".A.csv", pair.A);
        write_matrix_csv(args.dump_operators + ".B.csv", pair.B);
        manifest.outputs.push_back(args.dump_operators + ".A.csv");
        manifest.outputs.push_back(args.dump_operators + ".B.csv");
    }

    const SteklovSpectrum spectrum = solve_spectrum(pair, args.count);
    if (!args.csv.empty()) {
        write_spectrum_csv(args.csv, spectrum);
        manifest.outputs.push_back(args.csv);
    }
    if (!args.out.empty()) {
        write_spectrum_json(args.out, spectrum);
        manifest.outputs.push_back(args.out);
        emit_manifest(args.out, manifest, watch);
    } else {
        std::cout << spectrum_to_json(spectrum).dump(2) << "\n";
        if (!args.csv.empty()) emit_manifest(args.csv, manifest, watch);
    }
    return 0;
}

// ---------------------------------------------------------------- converge

struct ConvergeArgs {
    std::string shape_file;
    std::string n_list = "200,300,400,600";
    int ref_n = 1800;
    int count = 20;
    std::string out;
    int jobs = 1;
};

int cmd_converge(const ConvergeArgs& args) {
    Stopwatch watch;
    const FourierShape shape = read_shape(args.shape_file);
    const std::vector<int> ns = parse_int_list(args.n_list);
    if (ns.empty()) throw SteklovError("converge: empty n-list");
    for (int n : ns) {
        if (n % 2 != 0) throw OddNodeCount("converge: n-list entries must be even, got " + std::to_string(n));
        if (n >= args.ref_n) throw SteklovError("converge: ref-n must exceed every n in n-list");
    }

    const SteklovSpectrum ref = solve_for(shape, args.ref_n, args.count);

    std::vector<SteklovSpectrum> spectra(ns.size());
    if (args.jobs > 1) {
        std::vector<std::future<SteklovSpectrum>> futures;
        for (int n : ns)
            futures.push_back(std::async(std::launch::async, [&, n] { return solve_for(shape, n, args.count); }));
        for (size_t i = 0; i < futures.size(); ++i) spectra[i] = futures[i].get();
    } else {
        for (size_t i = 0; i < ns.size(); ++i) spectra[i] = solve_for(shape, ns[i], args.count);
    }

    auto out = open_out(args.out);
    out << "n,j,abs_error\n";
    for (size_t i = 0; i < ns.size(); ++i)
        for (int j = 0; j < args.count; ++j)
            out << ns[i] << "," << j << "," << std::abs(spectra[i].lambdas[j] - ref.lambdas[j]) << "\n";

    emit_manifest(args.out,
                  {"converge",
                   {args.shape_file},
                   {{"n_list", ns}, {"ref_n", args.ref_n}, {"count", args.count}},
                   {args.out},
                   0.0},
                  watch);
    return 0;
}

// ---------------------------------------------------------------- optimize

struct OptimizeArgs {
    int p = 0; // must be provided by flag or config
    std::string mode = "full";
    std::string seed = "random";
    int restarts = 5;
    int m_window = 0;
    int n_nodes = 0;
    int max_coeff_mode = 0;
    int max_iters = 400;
    double step_tol = 1e-7;
    double stationarity_tol = 1e-9;
    std::string out_dir = "steklov-run";
    std::uint64_t rng_seed = 0;
    int jobs = 1;
};

/// Run configuration file: either a JSON object or key = value lines
/// (# starts a comment). Keys mirror the command-line flags.
void load_optimize_config(const fs::path& path, OptimizeArgs& args) {
    std::ifstream in(path);
    if (!in) throw SteklovError("cannot open config file: " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::string text = buffer.str();

    json j;
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        try {
            j = json::parse(text);
        } catch (const json::exception& e) {
            throw SteklovError("invalid JSON config " + path.string() + ": " + e.what());
        }
    } else {
        std::stringstream lines(text);
        std::string line;
        while (std::getline(lines, line)) {
            if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            const auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            auto trim = [](std::string s) {
                const auto lo = s.find_first_not_of(" \t\r");
                const auto hi = s.find_last_not_of(" \t\r");
                return lo == std::string::npos ? std::string() : s.substr(lo, hi - lo + 1);
            };
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty() || value.empty()) continue;
            if (key == "mode" || key == "seed")
                j[key] = value;
            else if (key == "step_tol" || key == "stationarity_tol")
                j[key] = std::stod(value);
            else
                j[key] = std::stoll(value);
        }
    }

    if (j.contains("p")) args.p = j.at("p").get<int>();
    if (j.contains("mode")) args.mode = j.at("mode").get<std::string>();
    if (j.contains("seed")) args.seed = j.at("seed").get<std::string>();
    if (j.contains("restarts")) args.restarts = j.at("restarts").get<int>();
    if (j.contains("m_window")) args.m_window = j.at("m_window").get<int>();
    if (j.contains("n_nodes")) args.n_nodes = j.at("n_nodes").get<int>();
    if (j.contains("max_coeff_mode")) args.max_coeff_mode = j.at("max_coeff_mode").get<int>();
    if (j.contains("max_iters")) args.max_iters = j.at("max_iters").get<int>();
    if (j.contains("step_tol")) args.step_tol = j.at("step_tol").get<double>();
    if (j.contains("stationarity_tol")) args.stationarity_tol = j.at("stationarity_tol").get<double>();
    if (args.mode != "full" && args.mode != "symmetric")
        throw SteklovError("config: mode must be full or symmetric");
}

const char* termination_name(Termination status) {
    switch (status) {
        case Termination::Converged: return "Converged";
        case Termination::MaxIters: return "MaxIters";
        case Termination::Stalled: return "Stalled";
    }
    return "Unknown";
}

int cmd_optimize(const OptimizeArgs& args) {
    Stopwatch watch;
    ProblemSpec spec;
    spec.p = args.p;
    spec.mode = args.mode == "symmetric" ? OptMode::Symmetric : OptMode::Full;
    spec.m_window = args.m_window;
    spec.n_nodes = args.n_nodes;
    spec.max_coeff_mode = args.max_coeff_mode;
    spec.max_iters = args.max_iters;
    spec.step_tol = args.step_tol;
    spec.stationarity_tol = args.stationarity_tol;

    std::vector<FourierShape> seeds;
    if (args.seed == "random") {
        std::mt19937_64 rng(args.rng_seed);
        const int restarts = std::max(1, args.restarts);
        if (spec.mode == OptMode::Symmetric) {
            if (spec.p < 2) throw SteklovError("optimize: symmetric mode requires p >= 2");
            seeds.push_back(interp_seed(spec.p));
        } else {
            for (int r = 0; r < restarts; ++r) seeds.push_back(random_seed_shape(spec.resolved_max_mode(), rng));
        }
    } else if (args.seed == "interp") {
        if (spec.p < 2) throw SteklovError("optimize: interp seed requires p >= 2");
        seeds.push_back(interp_seed(spec.p));
    } else {
        seeds.push_back(read_shape(args.seed));
    }

    const OptimizationRun run = optimize_best(spec, seeds, args.jobs);
    const ConjectureReport conjecture = verify_conjecture(run);

    fs::create_directories(args.out_dir);
    const fs::path dir(args.out_dir);

    write_shape(dir / "shape.json", run.final_shape);

    {
        auto out = open_out(dir / "history.csv");
        out << "iter,min_window_Lambda,trust_radius\n";
        for (const IterateRecord& rec : run.history)
            out << rec.iter << "," << rec.min_window << "," << rec.trust_radius << "\n";
    }

    json report;
    report["p"] = spec.p;
    report["mode"] = args.mode;
    report["m_window"] = spec.resolved_m_window();
    report["n_nodes"] = spec.resolved_n_nodes();
    report["status"] = termination_name(run.status);
    report["best_min_window_Lambda"] = run.best_value;
    report["iterations"] = run.history.empty() ? 0 : run.history.back().iter;
    report["accepted_iterates"] = run.history.size();
    report["spectrum_solves"] = run.spectrum_solves;
    report["lambda"] = std::vector<double>(run.final_lambdas.begin(), run.final_lambdas.end());
    report["Lambda"] = std::vector<double>(run.final_Lambdas.begin(), run.final_Lambdas.end());
    {
        std::vector<double> window;
        for (int j = std::max(0, spec.p - 2); j <= spec.p + 4 && j < run.final_Lambdas.size(); ++j)
            window.push_back(run.final_Lambdas[j]);
        report["Lambda_window_pm"] = window;
    }
    report["gap"] = conjecture.gap;
    report["pfold_residual"] = conjecture.pfold_residual;
    report["axis_residual"] = conjecture.axis_residual;
    report["clusters"] = conjecture.clusters;
    report["shape_file"] = (dir / "shape.json").string();
    open_out(dir / "run.json") << report.dump(2) << "\n";

    emit_manifest(dir / "run.json",
                  {"optimize",
                   {args.seed},
                   {{"p", args.p},
                    {"mode", args.mode},
                    {"seed", args.seed},
                    {"restarts", args.restarts},
                    {"rng_seed", args.rng_seed},
                    {"n_nodes", spec.resolved_n_nodes()},
                    {"m_window", spec.resolved_m_window()}},
                   {(dir / "run.json").string(), (dir / "history.csv").string(), (dir / "shape.json").string()},
                   0.0},
                  watch);

    std::cout << "status=" << termination_name(run.status) << " min_window_Lambda=" << std::setprecision(12)
              << run.best_value << " out=" << (dir / "run.json").string() << "\n";
    return 0;
}

// ---------------------------------------------------------------- field

struct FieldArgs {
    std::string shape_file;
    int j = 1;
    int n = 256;
    int grid_w = 64;
    int grid_h = 64;
    std::vector<double> bbox;
    std::string out;
};

int cmd_field(const FieldArgs& args) {
    Stopwatch watch;
    const FourierShape shape = read_shape(args.shape_file);
    const SteklovSpectrum spectrum = solve_for(shape, args.n, args.j + 2);

    double xmin, xmax, ymin, ymax;
    if (args.bbox.size() == 4) {
        xmin = args.bbox[0];
        xmax = args.bbox[1];
        ymin = args.bbox[2];
        ymax = args.bbox[3];
    } else {
        const double r = spectrum.grid.x.rowwise().norm().maxCoeff() * 1.25;
        xmin = -r;
        xmax = r;
        ymin = -r;
        ymax = r;
    }

    Eigen::Matrix<double, Eigen::Dynamic, 2> points(args.grid_w * args.grid_h, 2);
    for (int iy = 0; iy < args.grid_h; ++iy) {
        for (int ix = 0; ix < args.grid_w; ++ix) {
            points(iy * args.grid_w + ix, 0) =
                args.grid_w == 1 ? xmin : xmin + (xmax - xmin) * ix / (args.grid_w - 1);
            points(iy * args.grid_w + ix, 1) =
                args.grid_h == 1 ? ymin : ymin + (ymax - ymin) * iy / (args.grid_h - 1);
        }
    }

    const Eigen::VectorXd values = evaluate_field(spectrum, args.j, points);

    // Accuracy of the representation degrades within about one node spacing
    // of the boundary; those points are flagged, not suppressed.
    const double cutoff = 2.0 * std::numbers::pi * spectrum.grid.jac.maxCoeff() / args.n;
    auto out = open_out(args.out);
    out << "x,y,u,near_boundary\n";
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
        double dist = std::numeric_limits<double>::infinity();
        for (int g = 0; g < spectrum.grid.n; ++g)
            dist = std::min(dist, std::hypot(points(i, 0) - spectrum.grid.x(g, 0),
                                             points(i, 1) - spectrum.grid.x(g, 1)));
        out << points(i, 0) << "," << points(i, 1) << "," << values[i] << "," << (dist < cutoff ? 1 : 0) << "\n";
    }

    emit_manifest(args.out,
                  {"field",
                   {args.shape_file},
                   {{"j", args.j},
                    {"n", args.n},
                    {"grid", std::to_string(args.grid_w) + "x" + std::to_string(args.grid_h)},
                    {"bbox", std::vector<double>{xmin, xmax, ymin, ymax}}},
                   {args.out},
                   0.0},
                  watch);
    return 0;
}

// ---------------------------------------------------------------- sweep-interp

struct SweepArgs {
    int p_min = 6;
    int p_max = 20;
    std::string out;
    int jobs = 1;
};

int cmd_sweep_interp(const SweepArgs& args) {
    Stopwatch watch;
    if (args.p_min < 2 || args.p_max > 60 || args.p_min > args.p_max)
        throw SteklovError("sweep-interp: p range must lie within 2..60");

    struct Row {
        int p;
        double Lambda, fit, residual, perim_ratio, ball;
    };

    auto compute = [](int p) {
        const FourierShape shape = interp_seed(p);
        int n = std::max({18 * p, 128, 3 * (p + 2) + 2});
        if (n % 2 != 0) ++n;
        const SteklovSpectrum spectrum = solve_for(shape, n, p + 2);
        Row row;
        row.p = p;
        row.Lambda = normalized_eigenvalue(spectrum, p);
        row.fit = 0.5801 + 1.1765 * p;
        row.residual = std::abs(row.Lambda - row.fit) / row.Lambda;
        row.perim_ratio = spectrum.grid.perimeter() / std::sqrt(shape.area());
        row.ball = ((p + 1) / 2) * std::sqrt(std::numbers::pi); // disk: Lambda_p = ceil(p/2) sqrt(pi)
        return row;
    };

    std::vector<Row> rows;
    if (args.jobs > 1) {
        std::vector<std::future<Row>> futures;
        for (int p = args.p_min; p <= args.p_max; ++p)
            futures.push_back(std::async(std::launch::async, compute, p));
        for (auto& f : futures) rows.push_back(f.get());
    } else {
        for (int p = args.p_min; p <= args.p_max; ++p) rows.push_back(compute(p));
    }

    auto out = open_out(args.out);
    out << "p,Lambda_p,fit_line,rel_residual,perim_over_sqrt_area,ball_Lambda\n";
    for (const Row& row : rows)
        out << row.p << "," << row.Lambda << "," << row.fit << "," << row.residual << "," << row.perim_ratio << ","
            << row.ball << "\n";

    emit_manifest(args.out,
                  {"sweep-interp", {}, {{"p_min", args.p_min}, {"p_max", args.p_max}}, {args.out}, 0.0}, watch);
    return 0;
}

// ---------------------------------------------------------------- grad-check

struct GradCheckArgs {
    std::string shape_file;
    int j = 1;
    std::string cos_modes = "0";
    std::string sin_modes;
    double h = 1e-5;
    int n = 256;
    std::string out;
};

int cmd_grad_check(const GradCheckArgs& args) {
    Stopwatch watch;
    const FourierShape shape = read_shape(args.shape_file);
    const std::vector<int> cos_modes = parse_int_list(args.cos_modes);
    const std::vector<int> sin_modes = parse_int_list(args.sin_modes);
    const int count = args.j + 3;

    const SteklovSpectrum spectrum = solve_for(shape, args.n, count);
    const GradientReport report = objective_gradient(spectrum, args.j, cos_modes, sin_modes);

    const int length = std::max({shape.max_mode() + 1,
                                 cos_modes.empty() ? 0 : *std::max_element(cos_modes.begin(), cos_modes.end()) + 1,
                                 sin_modes.empty() ? 0 : *std::max_element(sin_modes.begin(), sin_modes.end()) + 1});
    Eigen::VectorXd a = Eigen::VectorXd::Zero(length);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(length - 1);
    a.head(shape.cosine_coeffs().size()) = shape.cosine_coeffs();
    b.head(shape.sine_coeffs().size()) = shape.sine_coeffs();

    auto fd = [&](bool cosine, int k) {
        Eigen::VectorXd ap = a, am = a, bp = b, bm = b;
        (cosine ? ap[k] : bp[k - 1]) += args.h;
        (cosine ? am[k] : bm[k - 1]) -= args.h;
        const double plus = normalized_eigenvalue(solve_for(FourierShape(ap, bp), args.n, count), args.j);
        const double minus = normalized_eigenvalue(solve_for(FourierShape(am, bm), args.n, count), args.j);
        return (plus - minus) / (2.0 * args.h);
    };

    std::ostringstream body;
    body << std::setprecision(16) << "mode,analytic,fd,rel_err,cluster_warning\n";
    for (size_t i = 0; i < cos_modes.size(); ++i) {
        const double analytic = report.dLambda_dA[static_cast<Eigen::Index>(i)];
        const double numeric = fd(true, cos_modes[i]);
        body << "a" << cos_modes[i] << "," << analytic << "," << numeric << ","
             << std::abs(analytic - numeric) / std::max(1.0, std::abs(numeric)) << ","
             << (report.cluster_warning ? 1 : 0) << "\n";
    }
    for (size_t i = 0; i < sin_modes.size(); ++i) {
        const double analytic = report.dLambda_dB[static_cast<Eigen::Index>(i)];
        const double numeric = fd(false, sin_modes[i]);
        body << "b" << sin_modes[i] << "," << analytic << "," << numeric << ","
             << std::abs(analytic - numeric) / std::max(1.0, std::abs(numeric)) << ","
             << (report.cluster_warning ? 1 : 0) << "\n";
    }

    if (args.out.empty()) {
        std::cout << body.str();
    } else {
        open_out(args.out) << body.str();
        emit_manifest(args.out,
                      {"grad-check",
                       {args.shape_file},
                       {{"j", args.j}, {"cos_modes", cos_modes}, {"sin_modes", sin_modes}, {"h", args.h}, {"n", args.n}},
                       {args.out},
                       0.0},
                      watch);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Steklov eigenvalues of star-shaped planar domains: boundary-integral solver and shape optimizer"};
    app.require_subcommand(1);
    // long-only help so grad-check can expose the finite-difference step as --h
    app.set_help_flag("--help", "Print help");

    GlobalOptions global;
    if (const char* env = std::getenv("STEKLOV_RNG_SEED")) global.rng_seed = std::strtoull(env, nullptr, 10);
    app.add_option("--rng-seed", global.rng_seed, "Seed for all random draws (env STEKLOV_RNG_SEED)");
    app.add_option("--jobs", global.jobs, "Parallelize independent sweep points")->check(CLI::PositiveNumber);

    SpectrumArgs spectrum_args;
    auto* spectrum_cmd = app.add_subcommand("spectrum", "Compute the Steklov spectrum of a shape");
    spectrum_cmd->add_option("shape-file", spectrum_args.shape_file)->required();
    spectrum_cmd->add_option("--n", spectrum_args.n, "Nystrom node count (even)");
    spectrum_cmd->add_option("--count", spectrum_args.count, "Number of eigenvalues");
    spectrum_cmd->add_option("--out", spectrum_args.out, "Spectrum JSON path (default: stdout)");
    spectrum_cmd->add_option("--csv", spectrum_args.csv, "Also write one-eigenvalue-per-row CSV");
    spectrum_cmd->add_option("--dump-operators", spectrum_args.dump_operators,
                             "Debug: write <prefix>.A.csv and <prefix>.B.csv");

    ConvergeArgs converge_args;
    auto* converge_cmd = app.add_subcommand("converge", "Self-convergence study against a reference resolution");
    converge_cmd->add_option("shape-file", converge_args.shape_file)->required();
    converge_cmd->add_option("--n-list", converge_args.n_list, "Comma-separated node counts");
    converge_cmd->add_option("--ref-n", converge_args.ref_n, "Reference node count (> max of n-list)");
    converge_cmd->add_option("--count", converge_args.count, "Eigenvalues compared");
    converge_cmd->add_option("--out", converge_args.out, "Output CSV")->required();

    OptimizeArgs optimize_args;
    std::string optimize_config;
    auto* optimize_cmd = app.add_subcommand("optimize", "Maximize Lambda_p over Fourier shapes");
    optimize_cmd->add_option("--config", optimize_config, "Run config file (JSON or key = value lines)");
    optimize_cmd->add_option("--p", optimize_args.p, "Target eigenvalue index");
    optimize_cmd->add_option("--mode", optimize_args.mode, "full | symmetric")
        ->check(CLI::IsMember({"full", "symmetric"}));
    optimize_cmd->add_option("--seed", optimize_args.seed, "random | interp | <shape.json>");
    optimize_cmd->add_option("--restarts", optimize_args.restarts, "Random restarts in full mode");
    optimize_cmd->add_option("--m-window", optimize_args.m_window,
                             "Constrained eigenvalue window (default: expected multiplicity)");
    optimize_cmd->add_option("--n-nodes", optimize_args.n_nodes, "Discretization size (default 6*p*m, floor 128)");
    optimize_cmd->add_option("--max-coeff-mode", optimize_args.max_coeff_mode, "Highest free Fourier mode in full mode");
    optimize_cmd->add_option("--max-iters", optimize_args.max_iters);
    optimize_cmd->add_option("--step-tol", optimize_args.step_tol);
    optimize_cmd->add_option("--stationarity-tol", optimize_args.stationarity_tol);
    optimize_cmd->add_option("--out-dir", optimize_args.out_dir, "Output directory");

    FieldArgs field_args;
    auto* field_cmd = app.add_subcommand("field", "Evaluate eigenfunction j on a point grid");
    field_cmd->add_option("shape-file", field_args.shape_file)->required();
    field_cmd->add_option("--j", field_args.j, "Eigenfunction index");
    field_cmd->add_option("--n", field_args.n, "Nystrom node count");
    auto* grid_opt = field_cmd->add_option(
        "--grid",
        [&field_args](const CLI::results_t& res) {
            int w = 0, h = 0;
            char x = 0;
            std::istringstream in(res[0]);
            in >> w >> x >> h;
            if (!in || x != 'x' || w < 1 || h < 1) return false;
            field_args.grid_w = w;
            field_args.grid_h = h;
            return true;
        },
        "Sample grid, e.g. 64x64");
    grid_opt->type_name("WxH");
    field_cmd->add_option("--bbox", field_args.bbox, "xmin xmax ymin ymax")->expected(4);
    field_cmd->add_option("--out", field_args.out, "Output CSV")->required();

    SweepArgs sweep_args;
    auto* sweep_cmd =
        app.add_subcommand("sweep-interp", "Normalized eigenvalues of the interpolated near-optimal family");
    sweep_cmd->add_option("--p-min", sweep_args.p_min);
    sweep_cmd->add_option("--p-max", sweep_args.p_max);
    sweep_cmd->add_option("--out", sweep_args.out, "Output CSV")->required();

    GradCheckArgs grad_args;
    auto* grad_cmd = app.add_subcommand("grad-check", "Analytic shape gradient vs central finite differences");
    grad_cmd->set_help_flag("--help", "Print help");
    grad_cmd->add_option("shape-file", grad_args.shape_file)->required();
    grad_cmd->add_option("--j", grad_args.j, "Eigenvalue index");
    grad_cmd->add_option("--cos-modes", grad_args.cos_modes, "Comma-separated cosine modes");
    grad_cmd->add_option("--sin-modes", grad_args.sin_modes, "Comma-separated sine modes");
    grad_cmd->add_option("--h", grad_args.h, "Finite-difference step");
    grad_cmd->add_option("--fd-step", grad_args.h, "Alias for --h");
    grad_cmd->add_option("--n", grad_args.n, "Nystrom node count");
    grad_cmd->add_option("--out", grad_args.out, "Output CSV (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (spectrum_cmd->parsed()) return cmd_spectrum(spectrum_args);
        if (converge_cmd->parsed()) {
            converge_args.jobs = global.jobs;
            return cmd_converge(converge_args);
        }
        if (optimize_cmd->parsed()) {
            if (!optimize_config.empty()) {
                OptimizeArgs merged;
                load_optimize_config(optimize_config, merged);
                // command-line flags win over the config file
                if (optimize_cmd->count("--p")) merged.p = optimize_args.p;
                if (optimize_cmd->count("--mode")) merged.mode = optimize_args.mode;
                if (optimize_cmd->count("--seed")) merged.seed = optimize_args.seed;
                if (optimize_cmd->count("--restarts")) merged.restarts = optimize_args.restarts;
                if (optimize_cmd->count("--m-window")) merged.m_window = optimize_args.m_window;
                if (optimize_cmd->count("--n-nodes")) merged.n_nodes = optimize_args.n_nodes;
                if (optimize_cmd->count("--max-coeff-mode")) merged.max_coeff_mode = optimize_args.max_coeff_mode;
                if (optimize_cmd->count("--max-iters")) merged.max_iters = optimize_args.max_iters;
                if (optimize_cmd->count("--step-tol")) merged.step_tol = optimize_args.step_tol;
                if (optimize_cmd->count("--stationarity-tol")) merged.stationarity_tol = optimize_args.stationarity_tol;
                merged.out_dir = optimize_args.out_dir;
                optimize_args = merged;
            }
            if (optimize_args.p < 1) throw SteklovError("optimize: p must be >= 1 (set --p or config)");
            optimize_args.rng_seed = global.rng_seed;
            optimize_args.jobs = global.jobs;
            return cmd_optimize(optimize_args);
        }
        if (field_cmd->parsed()) return cmd_field(field_args);
        if (sweep_cmd->parsed()) {
            sweep_args.jobs = global.jobs;
            return cmd_sweep_interp(sweep_args);
        }
        if (grad_cmd->parsed()) return cmd_grad_check(grad_args);
    } catch (const EigendecompositionFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const InsufficientResolution& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
