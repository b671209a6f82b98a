// Acceptance suite: one pass/fail line per criterion.
//
// Usage: acceptance [--only <id>] [--skip <id>] ...
// ids: 1 2 3 4 5 6 7 7full 8

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "locspec/baselines.hpp"
#include "locspec/csv.hpp"
#include "locspec/image.hpp"
#include "locspec/kernel.hpp"
#include "locspec/rng.hpp"
#include "locspec/scoring.hpp"
#include "locspec/solver.hpp"
#include "locspec/surface.hpp"
#include "oracle.hpp"
#include "test_helpers.hpp"

namespace fs = std::filesystem;
using namespace locspec;

namespace {

const std::string cli = LOCSPEC_CLI_PATH;

struct Outcome {
    bool pass = true;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("locspec_acceptance_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

int run_cli(const std::string& args) {
    const int status = std::system((cli + " " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct SurfaceRanks {
    std::size_t localized = 0;
    std::size_t nn = 0;
    std::size_t kernel_nn = 0;
};

// Default surface pipeline: median epsilon, auto method, solver seed =
// instance seed. When full_basis is given, it is reused and only the
// scoring changes (criterion 3 compares k choices on one EVD).
SurfaceRanks surface_ranks(std::uint64_t seed, std::size_t grid, std::size_t l,
                           std::size_t k) {
    SurfaceSpec spec;
    spec.grid_side = grid;
    spec.seed = seed;
    const SurfaceInstance inst = generate_surface(spec);

    const KernelGraph graph = build_gaussian_kernel(inst.x, KernelConfig{});
    const NormalizedOperator op = normalize_symmetric(graph);
    SolverConfig cfg;
    cfg.l = l;
    cfg.seed = seed;
    const EigenBasis basis = solve(op, cfg);

    SurfaceRanks out;
    const ScoreVector scores = localized_scores(basis, inst.ref_index, k);
    out.localized = rank_of(rank(scores), inst.target_index);
    out.nn = baseline_rank_of(nn_rank(inst.x, inst.ref_index), inst.target_index);
    out.kernel_nn =
        baseline_rank_of(kernel_nn_rank(graph, inst.ref_index), inst.target_index);
    return out;
}

std::vector<SurfaceRanks>& cached_surface_runs() {
    static std::vector<SurfaceRanks> runs;  // criteria 1 and 2 share the 20 seeds
    if (runs.empty())
        for (std::uint64_t seed = 0; seed < 20; ++seed)
            runs.push_back(surface_ranks(seed, 50, 15, 3));
    return runs;
}

Outcome criterion1() {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<SurfaceRanks>& runs = cached_surface_runs();
    const double elapsed = seconds_since(t0);

    std::size_t successes = 0;
    for (const SurfaceRanks& r : runs)
        if (r.localized == 1) ++successes;

    Outcome out;
    out.pass = runs[0].localized == 1 && successes >= 18 && elapsed <= 60.0;
    std::ostringstream ss;
    ss << "seed-0 rank=" << runs[0].localized << ", successes=" << successes
       << "/20, " << elapsed << "s";
    out.detail = ss.str();
    return out;
}

Outcome criterion2() {
    const std::vector<SurfaceRanks>& runs = cached_surface_runs();
    std::size_t worse = 0;
    for (const SurfaceRanks& r : runs)
        if (r.nn > r.localized) ++worse;

    Outcome out;
    out.pass = worse >= 18;
    std::ostringstream ss;
    ss << "NN strictly worse in " << worse << "/20 seeds (seed-0 NN rank="
       << runs[0].nn << ", kernel-NN rank=" << runs[0].kernel_nn << ")";
    out.detail = ss.str();
    return out;
}

Outcome criterion3() {
    std::size_t degraded = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        SurfaceSpec spec;
        spec.grid_side = 22;
        spec.seed = seed;
        const SurfaceInstance inst = generate_surface(spec);
        const std::size_t m = inst.x.rows();

        const KernelGraph graph = build_gaussian_kernel(inst.x, KernelConfig{});
        const NormalizedOperator op = normalize_symmetric(graph);
        const EigenBasis full = evd_dense_full(op);

        EigenBasis top15{Vector(15), DenseMatrix(m, 15), full.residual};
        for (std::size_t j = 0; j < 15; ++j) {
            top15.values[j] = full.values[j];
            for (std::size_t i = 0; i < m; ++i) top15.vectors(i, j) = full.vectors(i, j);
        }

        const std::size_t rank_k3 =
            rank_of(rank(localized_scores(top15, inst.ref_index, 3)), inst.target_index);
        const std::size_t rank_km =
            rank_of(rank(localized_scores(full, inst.ref_index, m)), inst.target_index);
        if (rank_km > rank_k3) ++degraded;
    }
    Outcome out;
    out.pass = degraded >= 16;
    out.detail = "k=m strictly worse than k=3 in " + std::to_string(degraded) + "/20 seeds";
    return out;
}

Outcome criterion4() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (std::size_t m : {20ull, 50ull, 100ull}) {
        const DenseMatrix x = helpers::random_matrix(m, 3, 1000 + m);
        const double eps = median_squared_distance_exact(x);
        KernelConfig kcfg;
        kcfg.bandwidth = eps;
        const KernelGraph g = build_gaussian_kernel(x, kcfg);
        const NormalizedOperator a = normalize_symmetric(g);
        SolverConfig cfg;
        cfg.l = 10;
        cfg.method = SolverMethod::Dense;
        const EigenBasis basis = solve(a, cfg);
        const ScoreVector s = localized_scores(basis, 1, 3);
        const oracle::Vec ref =
            oracle::pipeline_scores(helpers::to_oracle(x), eps, 1, 3, 10);
        for (std::size_t i = 0; i < m; ++i)
            worst = std::max(worst, std::abs(s.s[i] - ref[i]));
    }
    const double elapsed = seconds_since(t0);
    Outcome out;
    out.pass = worst <= 1e-10 && elapsed <= 5.0;
    std::ostringstream ss;
    ss << "max |score - oracle| = " << worst << ", " << elapsed << "s";
    out.detail = ss.str();
    return out;
}

Outcome criterion5() {
    const auto t0 = std::chrono::steady_clock::now();
    const DenseMatrix x = helpers::clustered_points(300, 15, 3, 7);
    const KernelGraph g = build_gaussian_kernel(x, KernelConfig{});
    const NormalizedOperator a = normalize_symmetric(g);

    const EigenBasis dense = evd_dense_full(a);
    const double gap = dense.values[14] - dense.values[15];

    SolverConfig cfg;
    cfg.l = 15;
    cfg.seed = 3;
    const EigenBasis rand = evd_randomized(a, cfg);

    double val_diff = 0.0;
    for (std::size_t j = 0; j < 15; ++j)
        val_diff = std::max(val_diff, std::abs(rand.values[j] - dense.values[j]));

    EigenBasis dense15{Vector(15), DenseMatrix(300, 15), dense.residual};
    for (std::size_t j = 0; j < 15; ++j) {
        dense15.values[j] = dense.values[j];
        for (std::size_t i = 0; i < 300; ++i) dense15.vectors(i, j) = dense.vectors(i, j);
    }
    const ScoreVector sd = localized_scores(dense15, 0, 3);
    const ScoreVector sr = localized_scores(rand, 0, 3);
    double score_diff = 0.0;
    for (std::size_t i = 0; i < 300; ++i)
        score_diff = std::max(score_diff, std::abs(sd.s[i] - sr.s[i]));

    const double elapsed = seconds_since(t0);
    Outcome out;
    out.pass = gap >= 1e-3 && val_diff <= 1e-8 && score_diff <= 1e-6 && elapsed <= 10.0;
    std::ostringstream ss;
    ss << "gap=" << gap << ", max eigenvalue diff=" << val_diff
       << ", max score diff=" << score_diff << ", " << elapsed << "s";
    out.detail = ss.str();
    return out;
}

Outcome criterion6() {
    std::vector<std::string> failures;
    const auto expect = [&](bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    };

    const DenseMatrix x = helpers::random_matrix(60, 3, 606);
    const KernelGraph g = build_gaussian_kernel(x, KernelConfig{});
    const NormalizedOperator a = normalize_symmetric(g);

    // kernel symmetry and unit diagonal
    for (std::size_t i = 0; i < 60; ++i) {
        expect(g.kernel()(i, i) == 1.0, "unit diagonal");
        for (std::size_t j = 0; j < 60; ++j)
            expect(g.kernel()(i, j) == g.kernel()(j, i), "kernel symmetry");
    }

    // scale invariance of A under K -> cK
    DenseMatrix scaled = g.kernel();
    for (std::size_t i = 0; i < 60; ++i)
        for (std::size_t j = 0; j < 60; ++j) scaled(i, j) *= 4.2;
    const KernelGraph gs = KernelGraph::from_dense_kernel(std::move(scaled));
    const NormalizedOperator as = normalize_symmetric(gs);
    for (std::size_t i = 0; i < 60; ++i)
        for (std::size_t j = 0; j < 60; ++j)
            expect(std::abs(a.entry(i, j) - as.entry(i, j)) <= 1e-12,
                   "A scale invariance");

    // A sqrt(d) = sqrt(d)
    Vector sqrt_d(60);
    for (std::size_t i = 0; i < 60; ++i) sqrt_d[i] = std::sqrt(g.degrees()[i]);
    const Vector ad = a.apply(sqrt_d);
    for (std::size_t i = 0; i < 60; ++i)
        expect(std::abs(ad[i] - sqrt_d[i]) <= 1e-10, "A*sqrt(d) = sqrt(d)");

    // residuals and orthonormality
    const EigenBasis dense = evd_dense_full(a);
    expect(dense.residual <= 1e-9, "dense residual <= 1e-9");
    expect(helpers::orthonormality_error(dense.vectors) <= 1e-8, "dense U^T U = I");
    SolverConfig rcfg;
    rcfg.l = 10;
    rcfg.seed = 1;
    rcfg.oversample = 10;
    const EigenBasis rand = evd_randomized(a, rcfg);
    expect(rand.residual <= 1e-6, "randomized residual <= 1e-6");
    expect(helpers::orthonormality_error(rand.vectors) <= 1e-8, "randomized U^T U = I");

    // sign-flip invariance, bitwise, magnitude mode
    EigenBasis flipped = rand;
    for (std::size_t i = 0; i < 60; ++i) flipped.vectors(i, 3) = -flipped.vectors(i, 3);
    expect(localized_scores(rand, 5, 4).s == localized_scores(flipped, 5, 4).s,
           "sign-flip score invariance");

    // s_r equals the local reference norm
    const LocalizedSelection sel = select_top_coordinates(rand, 5, 4);
    const ScoreVector sc = score(build_localized_embedding(rand, sel), sel);
    expect(std::abs(sc.s[5] - norm2(sel.u_r_local)) <= 1e-14, "s_r = ||u_r_local||");

    // Gaussian kernel-NN order equals NN order exactly
    expect(nn_rank(x, 7).order == kernel_nn_rank(g, 7).order, "kernel-NN == NN");

    // PGM and patch round-trips
    GrayImage img;
    img.height = 9;
    img.width = 11;
    img.pixels.resize(99);
    Rng rng(12);
    for (auto& p : img.pixels) p = static_cast<std::uint8_t>(rng.next_below(256));
    std::ostringstream buf;
    write_pgm(img, buf);
    std::istringstream back(buf.str());
    expect(load_pgm(back) == img, "PGM round-trip");
    const PatchExtraction pe = extract_patches(img);
    bool patches_ok = true;
    for (std::size_t yy = 1; yy + 1 < img.height; ++yy)
        for (std::size_t xx = 1; xx + 1 < img.width; ++xx) {
            const std::size_t row = patch_index_of(pe.grid, yy, xx);
            std::size_t c = 0;
            for (std::size_t dy = 0; dy < 3; ++dy)
                for (std::size_t dx = 0; dx < 3; ++dx, ++c)
                    if (pe.x(row, c) !=
                        static_cast<double>(img.at(yy - 1 + dy, xx - 1 + dx)))
                        patches_ok = false;
        }
    expect(patches_ok, "patch round-trip");

    Outcome out;
    out.pass = failures.empty();
    if (out.pass) {
        out.detail = "all invariants hold";
    } else {
        out.detail = "violated:";
        for (const std::string& f : failures) out.detail += " [" + f + "]";
    }
    return out;
}

GrayImage desk_image_with_duplicate(std::size_t side, std::size_t ref_y,
                                    std::size_t ref_x, std::size_t dup_y,
                                    std::size_t dup_x) {
    Rng rng(77);
    GrayImage img;
    img.height = side;
    img.width = side;
    img.pixels.resize(side * side);
    for (std::size_t y = 0; y < side; ++y)
        for (std::size_t x = 0; x < side; ++x) {
            const double base = 128.0 + 70.0 * std::sin(0.35 * static_cast<double>(x)) *
                                            std::cos(0.21 * static_cast<double>(y));
            const double noise = 40.0 * (rng.next_uniform() - 0.5);
            img.at(y, x) = static_cast<std::uint8_t>(
                std::clamp(static_cast<int>(base + noise), 0, 255));
        }
    // stamp a pattern far from the background texture at the reference, then
    // plant an exact copy of it at the duplicate location; the scoring method
    // keys on the reference being distinctive, so a generic texture patch
    // would not localize
    static const std::uint8_t stamp[3][3] = {{250, 5, 250}, {5, 250, 5}, {250, 5, 250}};
    for (std::size_t dy = 0; dy < 3; ++dy)
        for (std::size_t dx = 0; dx < 3; ++dx) {
            img.at(ref_y - 1 + dy, ref_x - 1 + dx) = stamp[dy][dx];
            img.at(dup_y - 1 + dy, dup_x - 1 + dx) = stamp[dy][dx];
        }
    return img;
}

std::size_t rank_from_scores_csv(const fs::path& csv, std::size_t r,
                                 std::size_t target) {
    const DenseMatrix scores = read_csv_matrix_file(csv.string());
    std::size_t better = 0;
    const double target_score = scores(target, 1);
    for (std::size_t i = 0; i < scores.rows(); ++i) {
        if (i == r || i == target) continue;
        if (scores(i, 1) > target_score || (scores(i, 1) == target_score && i < target))
            ++better;
    }
    return better + 1;
}

Outcome criterion7_desk() {
    const auto t0 = std::chrono::steady_clock::now();
    const fs::path dir = scratch("desk");
    const std::size_t ref_y = 20, ref_x = 20, dup_y = 20, dup_x = 30;
    const GrayImage img = desk_image_with_duplicate(64, ref_y, ref_x, dup_y, dup_x);
    write_pgm_file(img, (dir / "desk.pgm").string());

    const int code = run_cli("image --input " + (dir / "desk.pgm").string() +
                             " --ref 20,20 --method dense --l 15 --k 3 --seed 0 --out " +
                             dir.string());
    Outcome out;
    if (code != 0) {
        out.pass = false;
        out.detail = "CLI exited with code " + std::to_string(code);
        return out;
    }

    const GrayImage hm = load_pgm_file((dir / "heatmap.pgm").string());
    PatchGrid grid{64, 64, 3};
    const std::size_t r = patch_index_of(grid, ref_y, ref_x);
    const std::size_t target = patch_index_of(grid, dup_y, dup_x);
    const std::size_t planted_rank = rank_from_scores_csv(dir / "scores.csv", r, target);
    const double elapsed = seconds_since(t0);

    out.pass = hm.height == 62 && hm.width == 62 && planted_rank <= 5 && elapsed <= 60.0;
    std::ostringstream ss;
    ss << "heatmap " << hm.height << "x" << hm.width << ", planted duplicate rank="
       << planted_rank << ", " << elapsed << "s";
    out.detail = ss.str();
    return out;
}

Outcome criterion7_full() {
    const auto t0 = std::chrono::steady_clock::now();
    const fs::path dir = scratch("full_image");
    const GrayImage img = desk_image_with_duplicate(256, 100, 100, 100, 110);
    write_pgm_file(img, (dir / "full.pgm").string());

    const std::string common =
        "image --input " + (dir / "full.pgm").string() +
        " --ref 166,96 --method randomized --l 15 --k 3 --seed 0 --power-iters 1 --out ";
    const int code1 = run_cli(common + (dir / "a").string());
    const int code2 = run_cli(common + (dir / "b").string());

    Outcome out;
    if (code1 != 0 || code2 != 0) {
        out.pass = false;
        out.detail = "CLI exit codes " + std::to_string(code1) + "/" + std::to_string(code2);
        return out;
    }
    const GrayImage hm = load_pgm_file((dir / "a" / "heatmap.pgm").string());
    const bool identical =
        slurp(dir / "a" / "heatmap.pgm") == slurp(dir / "b" / "heatmap.pgm") &&
        slurp(dir / "a" / "eigvec1.pgm") == slurp(dir / "b" / "eigvec1.pgm") &&
        slurp(dir / "a" / "scores.csv") == slurp(dir / "b" / "scores.csv");
    const double elapsed = seconds_since(t0);

    out.pass = hm.height == 254 && hm.width == 254 && identical;
    std::ostringstream ss;
    ss << "heatmap " << hm.height << "x" << hm.width << ", deterministic="
       << (identical ? "yes" : "NO") << ", " << elapsed << "s (matrix-free randomized)";
    out.detail = ss.str();
    return out;
}

Outcome criterion8() {
    const fs::path dir = scratch("determinism");
    std::ofstream(dir / "data.csv") << "0,0\n0.5,0.1\n4,4\n1,2\n0.4,0.2\n";

    std::vector<std::string> mismatches;
    const auto check_pair = [&](const std::string& name, const std::string& args,
                                const std::vector<std::string>& files) {
        const fs::path a = dir / (name + "_a");
        const fs::path b = dir / (name + "_b");
        if (run_cli(args + " --out " + a.string()) != 0 ||
            run_cli(args + " --out " + b.string()) != 0) {
            mismatches.push_back(name + " (nonzero exit)");
            return;
        }
        for (const std::string& f : files)
            if (slurp(a / f) != slurp(b / f)) mismatches.push_back(name + "/" + f);
    };

    check_pair("rank",
               "rank --input " + (dir / "data.csv").string() +
                   " --ref 0 --k 2 --l 4 --seed 5 --method randomized --oversample 1",
               {"scores.csv"});
    check_pair("surface", "surface --grid 10 --l 12 --k 3 --seed 3 --method randomized",
               {"surface_scores.csv", "surface_points.csv"});

    const GrayImage img = desk_image_with_duplicate(24, 10, 10, 10, 18);
    write_pgm_file(img, (dir / "img.pgm").string());
    check_pair("image",
               "image --input " + (dir / "img.pgm").string() +
                   " --ref 10,10 --method randomized --l 8 --k 3 --seed 2",
               {"heatmap.pgm", "eigvec1.pgm", "scores.csv"});

    Outcome out;
    out.pass = mismatches.empty();
    if (out.pass) {
        out.detail = "rank, surface, image reruns byte-identical";
    } else {
        out.detail = "mismatch:";
        for (const std::string& m : mismatches) out.detail += " " + m;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"1", criterion1},      {"2", criterion2}, {"3", criterion3},
        {"4", criterion4},      {"5", criterion5}, {"6", criterion6},
        {"7", criterion7_desk}, {"7full", criterion7_full}, {"8", criterion8},
    };

    std::vector<std::string> only, skip;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--only" && i + 1 < argc) only.push_back(argv[++i]);
        else if (arg == "--skip" && i + 1 < argc) skip.push_back(argv[++i]);
    }

    bool all_pass = true;
    for (const auto& [id, fn] : criteria) {
        const bool skipped =
            (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) ||
            std::find(skip.begin(), skip.end(), id) != skip.end();
        if (skipped) continue;
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << " — "
                  << o.detail << std::endl;
        all_pass = all_pass && o.pass;
    }
    return all_pass ? 0 : 1;
}
