// asym: batch facial-asymmetry analysis over numbered landmark/frame files.

#include <iostream>

#include <CLI11.hpp>

#include "asym/kernels.hpp"
#include "asym/pipeline.hpp"

namespace {

int guarded(const std::function<int()>& fn) {
    try {
        return fn();
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"frame-by-frame facial asymmetry measurement"};
    app.require_subcommand(1);

    asym::pipeline::RunConfig cfg;
    bool no_brightness_normalize = false;

    auto add_common = [&](CLI::App* sub, bool with_scheme) {
        sub->add_option("--in", cfg.input_dir, "input directory of numbered frames")->required();
        sub->add_option("--out", cfg.out_path, "output path");
        sub->add_option("--jobs", cfg.jobs, "worker threads (default: all cores)");
        if (with_scheme)
            sub->add_option("--scheme", cfg.scheme_path, "landmark scheme JSON file");
    };

    CLI::App* analyze = app.add_subcommand(
        "analyze", "asymmetry + movement metrics, CSV and SVG charts");
    add_common(analyze, true);
    long neutral = 0;
    analyze->add_option("--neutral", neutral, "neutral frame index")->required();

    CLI::App* measure2 = app.add_subcommand(
        "measure2", "pixel asymmetry across the inferred symmetry axis");
    add_common(measure2, true);
    measure2->add_flag("--no-brightness-normalize", no_brightness_normalize,
                       "skip mean-brightness equalization of the reflected side");

    CLI::App* keyframes = app.add_subcommand("keyframes", "tolerance-scan keyframe selection");
    add_common(keyframes, false);
    keyframes->add_option("--tolerance", cfg.tolerance, "frame distance threshold")->required();

    CLI::App* fit_error = app.add_subcommand("fit-error", "L1 distance between two images");
    std::string image_a, image_b;
    fit_error->add_option("imageA", image_a, "first PNM image")->required();
    fit_error->add_option("imageB", image_b, "second PNM image")->required();

    CLI::App* colorfix = app.add_subcommand(
        "colorfix", "shift each channel of a fitted image to the original's mean");
    std::string fitted, original, colorfix_out;
    colorfix->add_option("fitted", fitted, "fitted PNM image")->required();
    colorfix->add_option("original", original, "original PNM image")->required();
    colorfix->add_option("--out", colorfix_out, "corrected PNM output")->required();

    CLI::App* homog = app.add_subcommand(
        "homography", "estimate a homography from point files and warp an image");
    std::string src_pts, dst_pts, himg_in, himg_out;
    bool invert = false;
    homog->add_option("--src", src_pts, ".pts file of source points")->required();
    homog->add_option("--dst", dst_pts, ".pts file of destination points")->required();
    homog->add_option("--image", himg_in, "PNM image to warp");
    homog->add_option("--out", himg_out, "warped PNM output");
    homog->add_flag("--invert", invert, "apply the inverse transform");

    CLI::App* correlate = app.add_subcommand("correlate", "Pearson coefficient of two CSV columns");
    std::string csv_path, col_a, col_b;
    correlate->add_option("csv", csv_path, "CSV file")->required();
    correlate->add_option("columnA", col_a, "first column name")->required();
    correlate->add_option("columnB", col_b, "second column name")->required();

    CLI::App* train = app.add_subcommand("train-model", "train a PCA shape model from .pts files");
    add_common(train, false);
    train->add_option("--p", cfg.p, "proportion of variance to retain (default 0.98)");
    train->add_option("--clamp-k", cfg.clamp_k, "parameter bound multiplier (default 3)");

    std::string backend;
    app.add_option("--kernel-backend", backend, "force kernel backend: scalar|avx2|neon");

    CLI11_PARSE(app, argc, argv);

    if (!backend.empty()) {
        try {
            if (backend == "scalar")
                asym::kernels::force_backend(asym::kernels::Backend::scalar);
            else if (backend == "avx2")
                asym::kernels::force_backend(asym::kernels::Backend::avx2);
            else if (backend == "neon")
                asym::kernels::force_backend(asym::kernels::Backend::neon);
            else
                throw asym::error(asym::errc::invalid_parameter,
                                  "unknown backend '" + backend + "'");
        } catch (const std::exception& e) {
            std::cerr << e.what() << "\n";
            return 2;
        }
    }

    cfg.normalize_brightness = !no_brightness_normalize;

    using namespace asym::pipeline;
    if (analyze->parsed()) {
        cfg.neutral_index = neutral;
        return guarded([&] { return run_analyze(cfg, std::cout, std::cerr); });
    }
    if (measure2->parsed())
        return guarded([&] { return run_measure2(cfg, std::cout, std::cerr); });
    if (keyframes->parsed())
        return guarded([&] { return run_keyframes(cfg, std::cout, std::cerr); });
    if (fit_error->parsed())
        return run_fit_error(image_a, image_b, std::cout, std::cerr);
    if (colorfix->parsed())
        return run_colorfix(fitted, original, colorfix_out, std::cerr);
    if (homog->parsed()) {
        if (!himg_in.empty() && himg_out.empty()) {
            std::cerr << "homography: --out is required when --image is given\n";
            return 2;
        }
        return run_homography(src_pts, dst_pts, himg_in, himg_out, invert, std::cout,
                              std::cerr);
    }
    if (correlate->parsed())
        return run_correlate(csv_path, col_a, col_b, std::cout, std::cerr);
    if (train->parsed()) {
        if (cfg.out_path.empty()) {
            std::cerr << "train-model: --out is required\n";
            return 2;
        }
        return run_train_model(cfg, std::cout, std::cerr);
    }
    return 2;
}
