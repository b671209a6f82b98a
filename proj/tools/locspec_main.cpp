// Command-line front end: surface experiment, image patch experiment,
// and generic CSV ranking.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "locspec/baselines.hpp"
#include "locspec/csv.hpp"
#include "locspec/image.hpp"
#include "locspec/kernel.hpp"
#include "locspec/scoring.hpp"
#include "locspec/solver.hpp"
#include "locspec/surface.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 1;
constexpr double kResidualThreshold = 1e-5;

struct CommonOpts {
    std::string epsilon = "median";
    std::size_t k = 3;
    std::size_t l = 15;
    std::size_t oversample = 10;
    std::size_t power_iters = 10;
    std::uint64_t seed = 0;
    std::string mode = "magnitude";
    bool weight_eigenvalues = false;
    std::string method = "auto";
    std::string out_dir = ".";
    bool strict = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--epsilon", o.epsilon, "Kernel bandwidth (positive real or 'median')");
    cmd->add_option("--k", o.k, "Number of localized eigenvectors");
    cmd->add_option("--l", o.l, "Number of eigenpairs to compute");
    cmd->add_option("--oversample", o.oversample, "Randomized solver oversampling");
    cmd->add_option("--power-iters", o.power_iters, "Randomized solver power iterations");
    cmd->add_option("--seed", o.seed, "PRNG seed");
    cmd->add_option("--mode", o.mode, "Embedding mode: magnitude|signed")
        ->check(CLI::IsMember({"magnitude", "signed"}));
    cmd->add_flag("--weight-eigenvalues", o.weight_eigenvalues,
                  "Scale eigenvectors by eigenvalues before selection");
    cmd->add_option("--method", o.method, "Eigensolver: dense|randomized|auto")
        ->check(CLI::IsMember({"dense", "randomized", "auto"}));
    cmd->add_option("--out", o.out_dir, "Output directory");
    cmd->add_flag("--strict", o.strict, "Fail (exit 1) if the eigen-residual exceeds 1e-5");
}

locspec::KernelConfig kernel_config(const CommonOpts& o, locspec::KernelMode mode) {
    locspec::KernelConfig cfg;
    cfg.mode = mode;
    if (o.epsilon != "median") {
        char* end = nullptr;
        const double eps = std::strtod(o.epsilon.c_str(), &end);
        if (end != o.epsilon.c_str() + o.epsilon.size() || !(eps > 0.0))
            throw std::invalid_argument("--epsilon must be a positive real or 'median'");
        cfg.bandwidth = eps;
    }
    return cfg;
}

locspec::SolverConfig solver_config(const CommonOpts& o) {
    locspec::SolverConfig cfg;
    cfg.l = o.l;
    cfg.oversample = o.oversample;
    cfg.power_iters = o.power_iters;
    cfg.seed = o.seed;
    cfg.method = o.method == "dense"        ? locspec::SolverMethod::Dense
                 : o.method == "randomized" ? locspec::SolverMethod::Randomized
                                            : locspec::SolverMethod::Auto;
    return cfg;
}

locspec::ScoreMode score_mode(const CommonOpts& o) {
    return o.mode == "signed" ? locspec::ScoreMode::Signed : locspec::ScoreMode::Magnitude;
}

void echo_config(const CommonOpts& o, const locspec::KernelGraph& graph) {
    std::cout << "config: epsilon=" << locspec::format_real(graph.epsilon())
              << " k=" << o.k << " l=" << o.l << " oversample=" << o.oversample
              << " power_iters=" << o.power_iters << " seed=" << o.seed
              << " mode=" << o.mode
              << " weight_eigenvalues=" << (o.weight_eigenvalues ? 1 : 0)
              << " method=" << o.method << " strict=" << (o.strict ? 1 : 0) << "\n";
}

// Returns false when the residual gate fails under --strict.
bool report_residual(const CommonOpts& o, const locspec::EigenBasis& basis) {
    std::cout << "residual: " << locspec::format_real(basis.residual) << "\n";
    if (basis.residual > kResidualThreshold) {
        if (o.strict) {
            std::cerr << "error: eigen-residual " << basis.residual
                      << " exceeds " << kResidualThreshold << " (--strict)\n";
            return false;
        }
        std::cerr << "warning: eigen-residual " << basis.residual << " exceeds "
                  << kResidualThreshold << "\n";
    }
    return true;
}

locspec::ScoreVector run_scoring(const locspec::EigenBasis& basis, std::size_t r,
                                 const CommonOpts& o) {
    if (o.k > o.l) throw std::invalid_argument("--k must not exceed --l");
    const locspec::EigenBasis* use = &basis;
    locspec::EigenBasis weighted;
    if (o.weight_eigenvalues) {
        weighted = locspec::weight_by_eigenvalues(basis);
        use = &weighted;
    }
    return locspec::localized_scores(*use, r, o.k, score_mode(o));
}

int cmd_surface(CommonOpts& o, std::size_t grid, double delta, std::size_t trials) {
    std::filesystem::create_directories(o.out_dir);
    std::size_t successes = 0;
    const std::size_t runs = trials == 0 ? 1 : trials;
    for (std::size_t t = 0; t < runs; ++t) {
        const std::uint64_t seed = o.seed + t;
        locspec::SurfaceSpec spec;
        spec.grid_side = grid;
        spec.height_offset = delta;
        spec.seed = seed;
        const locspec::SurfaceInstance inst = locspec::generate_surface(spec);
        const std::size_t m = inst.x.rows();
        if (o.l > m) throw std::invalid_argument("--l exceeds the number of points");
        if (o.k > o.l) throw std::invalid_argument("--k must not exceed --l");

        const locspec::KernelGraph graph =
            locspec::build_gaussian_kernel(inst.x, kernel_config(o, locspec::KernelMode::Dense));
        const locspec::NormalizedOperator op = locspec::normalize_symmetric(graph);
        locspec::SolverConfig scfg = solver_config(o);
        scfg.seed = seed;
        const locspec::EigenBasis basis = locspec::solve(op, scfg);
        if (t == 0) echo_config(o, graph);
        if (!report_residual(o, basis)) return kExitNumerical;

        const locspec::ScoreVector scores = run_scoring(basis, inst.ref_index, o);
        const locspec::Ranking ranking = locspec::rank(scores);
        const std::size_t method_rank = locspec::rank_of(ranking, inst.target_index);

        const locspec::BaselineRanking nn = locspec::nn_rank(inst.x, inst.ref_index);
        const locspec::BaselineRanking knn = locspec::kernel_nn_rank(graph, inst.ref_index);
        const std::size_t nn_r = locspec::baseline_rank_of(nn, inst.target_index);
        const std::size_t knn_r = locspec::baseline_rank_of(knn, inst.target_index);

        std::cout << "trial seed=" << seed << " localized_rank=" << method_rank
                  << " nn_rank=" << nn_r << " kernel_nn_rank=" << knn_r << "\n";
        if (method_rank == 1) ++successes;

        if (t == 0) {
            locspec::write_scores_csv_file(scores, o.out_dir + "/surface_scores.csv");
            locspec::write_surface_csv_file(inst, o.out_dir + "/surface_points.csv");
        }
    }
    if (trials > 0)
        std::cout << "success_fraction: " << successes << "/" << runs << "\n";
    return 0;
}

int cmd_image(CommonOpts& o, const std::string& input, const std::string& ref) {
    std::size_t ref_y = 0, ref_x = 0;
    if (std::sscanf(ref.c_str(), "%zu,%zu", &ref_y, &ref_x) != 2)
        throw std::invalid_argument("--ref must be 'y,x' pixel coordinates");

    const locspec::GrayImage img = locspec::load_pgm_file(input);
    const locspec::PatchExtraction patches = locspec::extract_patches(img, 3);
    const std::size_t r = locspec::patch_index_of(patches.grid, ref_y, ref_x);
    const std::size_t m = patches.x.rows();
    if (o.l > m) throw std::invalid_argument("--l exceeds the number of patches");
    if (o.k > o.l) throw std::invalid_argument("--k must not exceed --l");

    const locspec::KernelMode kmode =
        o.method == "dense" ? locspec::KernelMode::Dense : locspec::KernelMode::MatrixFree;
    const locspec::KernelGraph graph =
        locspec::build_gaussian_kernel(patches.x, kernel_config(o, kmode));
    const locspec::NormalizedOperator op = locspec::normalize_symmetric(graph);
    locspec::SolverConfig scfg = solver_config(o);
    if (o.method == "auto") scfg.method = locspec::SolverMethod::Randomized;
    const locspec::EigenBasis basis = locspec::solve(op, scfg);
    echo_config(o, graph);
    if (!report_residual(o, basis)) return kExitNumerical;

    const locspec::ScoreVector scores = run_scoring(basis, r, o);

    std::filesystem::create_directories(o.out_dir);
    locspec::write_scores_csv_file(scores, o.out_dir + "/scores.csv");
    locspec::write_pgm_file(locspec::scores_to_heatmap(scores.s, patches.grid, true),
                            o.out_dir + "/heatmap.pgm");
    locspec::write_pgm_file(locspec::eigvec_to_map(basis, 0, patches.grid, false),
                            o.out_dir + "/eigvec1.pgm");
    std::cout << "patches: " << m << " (" << patches.grid.out_height() << "x"
              << patches.grid.out_width() << ")\n"
              << "reference_patch: " << r << "\n"
              << "outputs: heatmap.pgm eigvec1.pgm scores.csv in " << o.out_dir << "\n";
    return 0;
}

int cmd_rank(CommonOpts& o, const std::string& input, std::size_t r, std::size_t top_n) {
    const locspec::DenseMatrix x = locspec::read_csv_matrix_file(input);
    const std::size_t m = x.rows();
    if (m < 2) throw std::invalid_argument("need at least 2 data rows");
    if (r >= m) throw std::invalid_argument("--ref out of range");
    if (o.l > m) throw std::invalid_argument("--l exceeds the number of points");
    if (o.k > o.l) throw std::invalid_argument("--k must not exceed --l");

    const locspec::KernelGraph graph =
        locspec::build_gaussian_kernel(x, kernel_config(o, locspec::KernelMode::Dense));
    const locspec::NormalizedOperator op = locspec::normalize_symmetric(graph);
    const locspec::EigenBasis basis = locspec::solve(op, solver_config(o));
    echo_config(o, graph);
    if (!report_residual(o, basis)) return kExitNumerical;

    const locspec::ScoreVector scores = run_scoring(basis, r, o);
    const locspec::Ranking ranking = locspec::rank(scores);

    const std::size_t shown = std::min(top_n, ranking.order.size());
    for (std::size_t pos = 0; pos < shown; ++pos) {
        const std::size_t idx = ranking.order[pos];
        std::cout << "rank " << pos + 1 << ": index=" << idx
                  << " score=" << locspec::format_real(scores.s[idx]) << "\n";
    }
    std::filesystem::create_directories(o.out_dir);
    locspec::write_scores_csv_file(scores, o.out_dir + "/scores.csv");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Localized spectral similarity search"};
    app.require_subcommand(1);

    CommonOpts surface_opts, image_opts, rank_opts;
    std::size_t grid = 50;
    double delta = 0.0;
    std::size_t trials = 0;
    std::string image_input, image_ref;
    std::string rank_input;
    std::size_t rank_ref = 0;
    std::size_t top_n = 10;

    CLI::App* surface = app.add_subcommand(
        "surface", "Synthetic 3D surface experiment with injected anomalies");
    surface->add_option("--grid", grid, "Grid side length (m = grid^2 + 2)");
    surface->add_option("--delta", delta, "Anomaly height offset (0 = half the z-range)");
    surface->add_option("--trials", trials, "Repeat over consecutive seeds");
    add_common(surface, surface_opts);

    CLI::App* image = app.add_subcommand(
        "image", "Patch similarity over a grayscale PGM image");
    image->add_option("--input", image_input, "Input PGM (P2 or P5)")->required();
    image->add_option("--ref", image_ref, "Reference patch center as 'y,x'")->required();
    add_common(image, image_opts);

    CLI::App* rankc = app.add_subcommand("rank", "Rank rows of a CSV matrix by similarity");
    rankc->add_option("--input", rank_input, "Input CSV data matrix")->required();
    rankc->add_option("--ref", rank_ref, "Reference row index (0-based)")->required();
    rankc->add_option("--top", top_n, "Number of results to print");
    add_common(rankc, rank_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        if (surface->parsed()) return cmd_surface(surface_opts, grid, delta, trials);
        if (image->parsed()) return cmd_image(image_opts, image_input, image_ref);
        return cmd_rank(rank_opts, rank_input, rank_ref, top_n);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitNumerical;
    }
}
