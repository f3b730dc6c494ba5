#include "asym/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "asym/chart.hpp"
#include "asym/homography.hpp"
#include "asym/kernels.hpp"
#include "asym/keyframes.hpp"
#include "asym/pts.hpp"
#include "asym/shape_model.hpp"

namespace asym::pipeline {

namespace fs = std::filesystem;

namespace {

std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

struct ParsedName {
    std::string stem;
    std::string digits;
    long index = 0;
};

std::optional<ParsedName> parse_frame_name(const std::string& name, const std::string& ext) {
    if (name.size() <= ext.size() || name.substr(name.size() - ext.size()) != ext)
        return std::nullopt;
    const std::string base = name.substr(0, name.size() - ext.size());
    std::size_t d = base.size();
    while (d > 0 && std::isdigit(static_cast<unsigned char>(base[d - 1])))
        --d;
    if (d == base.size())
        return std::nullopt; // no trailing index
    ParsedName out;
    out.stem = base.substr(0, d);
    out.digits = base.substr(d);
    if (out.digits.size() > 9)
        return std::nullopt;
    out.index = std::stol(out.digits);
    return out;
}

void write_text_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        raise(errc::invalid_input, "cannot write " + path.string());
    out.write(text.data(), static_cast<long>(text.size()));
}

GrayImage load_gray_frame(const fs::path& path) {
    PnmImage img = read_pnm_file(path.string());
    if (std::holds_alternative<RgbImage>(img))
        return to_gray(std::get<RgbImage>(img));
    return std::move(std::get<GrayImage>(img));
}

// Fan frames out over `jobs` workers; `fn(i)` must only touch slot i of
// its outputs. Exceptions are captured and re-thrown per frame by `emit`.
template <typename Fn>
void parallel_for_frames(std::size_t count, int jobs, Fn&& fn) {
    unsigned n = jobs > 0 ? static_cast<unsigned>(jobs) : std::thread::hardware_concurrency();
    if (n == 0)
        n = 1;
    n = std::min<unsigned>(n, count == 0 ? 1 : static_cast<unsigned>(count));
    if (n <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (unsigned w = 0; w < n; ++w)
        pool.emplace_back([&]() {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count)
                    return;
                fn(i);
            }
        });
    for (std::thread& t : pool)
        t.join();
}

LandmarkScheme scheme_for(const RunConfig& cfg, std::size_t default_n) {
    if (!cfg.scheme_path.empty())
        return load_scheme(cfg.scheme_path);
    LandmarkScheme scheme;
    scheme.n = default_n;
    return scheme;
}

} // namespace

std::vector<FrameFile> discover_frames(const std::string& dir, FrameKind kind) {
    if (!fs::is_directory(dir))
        raise(errc::invalid_input, "not a directory: " + dir);

    const bool want_pts = kind != FrameKind::image_only;
    const bool want_image = kind != FrameKind::pts_only;
    std::map<long, FrameFile> by_index;
    std::string stem;
    bool stem_set = false;

    auto check_stem = [&](const ParsedName& pn, const fs::path& p) {
        if (!stem_set) {
            stem = pn.stem;
            stem_set = true;
        } else if (pn.stem != stem) {
            raise(errc::invalid_input, "mixed frame stems '" + stem + "' and '" + pn.stem +
                                           "' in " + dir + " (" + p.filename().string() + ")");
        }
    };

    for (const fs::directory_entry& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file())
            continue;
        const std::string name = entry.path().filename().string();
        if (auto pn = parse_frame_name(name, ".pts")) {
            if (!want_pts)
                continue;
            check_stem(*pn, entry.path());
            by_index[pn->index].index = pn->index;
            by_index[pn->index].pts = entry.path();
        } else if (parse_frame_name(name, ".ppm") || parse_frame_name(name, ".pgm")) {
            if (!want_image)
                continue;
            auto pn2 = parse_frame_name(name, name.substr(name.size() - 4));
            check_stem(*pn2, entry.path());
            by_index[pn2->index].index = pn2->index;
            by_index[pn2->index].image = entry.path();
        }
    }

    std::vector<FrameFile> frames;
    frames.reserve(by_index.size());
    for (auto& [idx, f] : by_index) {
        if (want_pts && f.pts.empty())
            raise(errc::invalid_input, "frame " + std::to_string(idx) + " has no .pts file");
        if (want_image && f.image.empty())
            raise(errc::invalid_input, "frame " + std::to_string(idx) + " has no image file");
        frames.push_back(f);
    }
    if (frames.empty())
        raise(errc::invalid_input, "no frames found in " + dir);
    for (std::size_t i = 1; i < frames.size(); ++i)
        if (frames[i].index != frames[i - 1].index + 1)
            raise(errc::invalid_input,
                  "frame index gap between " + std::to_string(frames[i - 1].index) + " and " +
                      std::to_string(frames[i].index));
    return frames;
}

LandmarkScheme load_scheme(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        raise(errc::invalid_input, "cannot open scheme file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        raise(errc::parse_error, "scheme file " + path + ": " + e.what());
    }

    LandmarkScheme scheme;
    if (!j.contains("n") || !j["n"].is_number_unsigned())
        raise(errc::parse_error, "scheme file " + path + ": missing numeric field 'n'");
    scheme.n = j["n"].get<std::size_t>();

    if (j.contains("pairing") && j["pairing"].is_array()) {
        for (const auto& pair : j["pairing"]) {
            if (!pair.is_array() || pair.size() != 2)
                raise(errc::parse_error, "scheme pairing entries must be [left, right]");
            scheme.pairs.emplace_back(pair[0].get<std::size_t>(), pair[1].get<std::size_t>());
        }
    } else if (j.contains("pairing") && j["pairing"] != "by-index-order") {
        raise(errc::parse_error, "scheme pairing must be \"by-index-order\" or a pair list");
    }

    if (j.contains("tie_rule")) {
        const std::string tie = j["tie_rule"].get<std::string>();
        if (tie == "left")
            scheme.tie_rule = LandmarkScheme::Tie::left;
        else if (tie == "right")
            scheme.tie_rule = LandmarkScheme::Tie::right;
        else
            raise(errc::parse_error, "scheme tie_rule must be \"left\" or \"right\"");
    }
    return scheme;
}

int run_analyze(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const std::vector<FrameFile> frames = discover_frames(cfg.input_dir, FrameKind::pts_only);
    if (!cfg.neutral_index)
        raise(errc::invalid_parameter, "analyze requires a designated neutral frame index");

    const auto neutral_it =
        std::find_if(frames.begin(), frames.end(),
                     [&](const FrameFile& f) { return f.index == *cfg.neutral_index; });
    if (neutral_it == frames.end())
        raise(errc::invalid_parameter,
              "neutral frame index " + std::to_string(*cfg.neutral_index) + " not in input");

    const Landmarks neutral = read_pts_file(neutral_it->pts.string());
    const LandmarkScheme scheme = scheme_for(cfg, neutral.size());
    split_left_right(neutral, scheme); // fail here, not per frame, if the neutral cannot split

    struct Row {
        FrameMetrics metrics;
        std::string error;
    };
    std::vector<Row> rows(frames.size());

    parallel_for_frames(frames.size(), cfg.jobs, [&](std::size_t i) {
        Row& row = rows[i];
        row.metrics.frame_index = frames[i].index;
        try {
            Landmarks lm = read_pts_file(frames[i].pts.string());
            lm.frame_index = frames[i].index;
            const MeasureOneResult m1 = measure_one(lm, scheme);
            row.metrics.asymmetry = m1.asymmetry;
            row.metrics.degenerate = m1.alignment.degenerate;
            row.metrics.left_movement = movement_from_neutral(lm, neutral, Side::left, scheme);
            row.metrics.right_movement = movement_from_neutral(lm, neutral, Side::right, scheme);
            row.metrics.overall_movement =
                overall_movement(row.metrics.left_movement, row.metrics.right_movement);
        } catch (const std::exception& e) {
            row.error = e.what();
        }
    });

    const fs::path out_dir = cfg.out_path.empty() ? fs::path(".") : fs::path(cfg.out_path);
    fs::create_directories(out_dir);

    std::string csv = "frame,asymmetry,left_movement,right_movement,overall_movement\n";
    std::vector<double> asym, left, right, overall;
    std::vector<Point> asym_line, left_line, right_line, lr_scatter, mov_scatter;
    int failures = 0;
    for (const Row& row : rows) {
        if (!row.error.empty()) {
            err << "frame " << row.metrics.frame_index << ": " << row.error << "\n";
            ++failures;
            continue;
        }
        const FrameMetrics& m = row.metrics;
        csv += std::to_string(m.frame_index) + "," + fmt6(m.asymmetry) + "," +
               fmt6(m.left_movement) + "," + fmt6(m.right_movement) + "," +
               fmt6(m.overall_movement) + "\n";
        asym.push_back(m.asymmetry);
        left.push_back(m.left_movement);
        right.push_back(m.right_movement);
        overall.push_back(m.overall_movement);
        const double fi = static_cast<double>(m.frame_index);
        asym_line.push_back({fi, m.asymmetry});
        left_line.push_back({fi, m.left_movement});
        right_line.push_back({fi, m.right_movement});
        lr_scatter.push_back({m.right_movement, m.left_movement});
        mov_scatter.push_back({m.overall_movement, m.asymmetry});
    }

    write_text_file(out_dir / "metrics.csv", csv);
    write_text_file(out_dir / "asymmetry.svg",
                    line_chart_svg("Asymmetry by frame", "frame", "asymmetry (px)",
                                   {{"asymmetry", "#cc00cc", asym_line}}));
    write_text_file(out_dir / "movement.svg",
                    line_chart_svg("Movement from the neutral frame", "frame", "movement (px)",
                                   {{"left", "#cc00cc", left_line}, {"right", "#cc0000", right_line}}));
    write_text_file(out_dir / "left_vs_right.svg",
                    scatter_chart_svg("Left-sided vs right-sided movement",
                                      "right movement (px)", "left movement (px)",
                                      {{"frames", "#0066cc", lr_scatter}}, true));
    write_text_file(out_dir / "asymmetry_vs_movement.svg",
                    scatter_chart_svg("Asymmetry vs overall movement", "overall movement (px)",
                                      "asymmetry (px)", {{"frames", "#0066cc", mov_scatter}},
                                      false));

    auto report_pearson = [&](const char* what, const std::vector<double>& a,
                              const std::vector<double>& b) {
        try {
            out << "pearson(" << what << ") = " << fmt6(pearson(a, b)) << "\n";
        } catch (const error& e) {
            out << "pearson(" << what << ") = undefined (" << e.what() << ")\n";
        }
    };
    report_pearson("left_movement,right_movement", left, right);
    report_pearson("overall_movement,asymmetry", overall, asym);

    return failures == 0 ? 0 : 1;
}

int run_measure2(const RunConfig& cfg, std::ostream& /*out*/, std::ostream& err) {
    const std::vector<FrameFile> frames =
        discover_frames(cfg.input_dir, FrameKind::pts_and_image);
    const LandmarkScheme scheme =
        scheme_for(cfg, cfg.scheme_path.empty()
                            ? read_pts_file(frames.front().pts.string()).size()
                            : 0);
    const MeasureTwoOptions opts{cfg.normalize_brightness};

    struct Row {
        long index = 0;
        PixelAsymmetry pa;
        std::string error;
    };
    std::vector<Row> rows(frames.size());

    parallel_for_frames(frames.size(), cfg.jobs, [&](std::size_t i) {
        Row& row = rows[i];
        row.index = frames[i].index;
        try {
            Landmarks lm = read_pts_file(frames[i].pts.string());
            lm.frame_index = frames[i].index;
            const GrayImage frame = load_gray_frame(frames[i].image);
            row.pa = measure_two(frame, lm, scheme, opts);
        } catch (const std::exception& e) {
            row.error = e.what();
        }
    });

    std::string csv = "frame,mean_abs_diff,median_abs_diff,overlap_pixels\n";
    int failures = 0;
    for (const Row& row : rows) {
        if (!row.error.empty()) {
            err << "frame " << row.index << ": " << row.error << "\n";
            csv += std::to_string(row.index) + ",nan,nan,0\n";
            ++failures;
            continue;
        }
        csv += std::to_string(row.index) + "," + fmt6(row.pa.mean_abs_diff) + "," +
               std::to_string(row.pa.median_abs_diff) + "," +
               std::to_string(row.pa.overlap_pixel_count) + "\n";
    }

    const fs::path out_path = cfg.out_path.empty() ? fs::path("measure2.csv")
                                                   : fs::path(cfg.out_path);
    if (out_path.has_parent_path())
        fs::create_directories(out_path.parent_path());
    write_text_file(out_path, csv);
    return failures == 0 ? 0 : 1;
}

int run_keyframes(const RunConfig& cfg, std::ostream& out, std::ostream& /*err*/) {
    const std::vector<FrameFile> frames = discover_frames(cfg.input_dir, FrameKind::image_only);

    std::size_t pos = 0;
    const auto next = [&]() -> std::optional<FrameVector> {
        if (pos >= frames.size())
            return std::nullopt;
        const FrameFile& f = frames[pos++];
        FrameVector fv;
        fv.frame_index = f.index;
        const PnmImage img = read_pnm_file(f.image.string());
        std::visit([&](const auto& i) { fv.values = i.pixels; }, img);
        return fv;
    };

    const KeyframeSelection sel = select_keyframes(next, cfg.tolerance);

    std::string text;
    for (const long p : sel.selected)
        text += std::to_string(frames[static_cast<std::size_t>(p)].index) + "\n";
    if (!cfg.out_path.empty())
        write_text_file(cfg.out_path, text);
    else
        out << text;
    return 0;
}

int run_fit_error(const std::string& image_a, const std::string& image_b, std::ostream& out,
                  std::ostream& err) {
    try {
        const PnmImage a = read_pnm_file(image_a);
        const PnmImage b = read_pnm_file(image_b);
        if (a.index() != b.index())
            raise(errc::image_mismatch, "images have different channel counts");
        std::uint64_t v;
        if (std::holds_alternative<RgbImage>(a)) {
            v = l1_norm(std::get<RgbImage>(a), std::get<RgbImage>(b));
        } else {
            const GrayImage& ga = std::get<GrayImage>(a);
            const GrayImage& gb = std::get<GrayImage>(b);
            if (ga.width != gb.width || ga.height != gb.height)
                raise(errc::image_mismatch, "image dimensions differ");
            v = kernels::sum_abs_diff_u8(ga.pixels.data(), gb.pixels.data(), ga.pixels.size());
        }
        out << v << "\n";
        return 0;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return 1;
    }
}

int run_colorfix(const std::string& fitted, const std::string& original,
                 const std::string& out_path, std::ostream& err) {
    try {
        const PnmImage f = read_pnm_file(fitted);
        const PnmImage o = read_pnm_file(original);
        if (!std::holds_alternative<RgbImage>(f) || !std::holds_alternative<RgbImage>(o))
            raise(errc::invalid_input, "colorfix expects colour (P3/P6) images");
        const RgbImage corrected = color_correct(std::get<RgbImage>(f), std::get<RgbImage>(o));
        write_pnm_file(out_path, corrected);
        return 0;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return 1;
    }
}

int run_homography(const std::string& src_pts, const std::string& dst_pts,
                   const std::string& image_in, const std::string& image_out, bool invert,
                   std::ostream& out, std::ostream& err) {
    try {
        const Landmarks src = read_pts_file(src_pts);
        const Landmarks dst = read_pts_file(dst_pts);
        const Homography h = estimate_homography(src.points, dst.points);
        const Homography applied = invert ? invert_homography(h) : h;

        char buf[128];
        for (int r = 0; r < 3; ++r) {
            std::snprintf(buf, sizeof buf, "%.10g %.10g %.10g\n", applied.m[r][0],
                          applied.m[r][1], applied.m[r][2]);
            out << buf;
        }

        if (!image_in.empty()) {
            const PnmImage img = read_pnm_file(image_in);
            const PnmImage warped = std::visit(
                [&](const auto& i) -> PnmImage { return warp_perspective(i, applied); }, img);
            write_pnm_file(image_out, warped);
        }
        return 0;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return 1;
    }
}

int run_correlate(const std::string& csv_path, const std::string& column_a,
                  const std::string& column_b, std::ostream& out, std::ostream& err) {
    try {
        std::ifstream in(csv_path);
        if (!in)
            raise(errc::invalid_input, "cannot open " + csv_path);
        std::string line;
        if (!std::getline(in, line))
            raise(errc::parse_error, csv_path + ": empty file");

        auto split = [](const std::string& s) {
            std::vector<std::string> cells;
            std::string cur;
            for (const char c : s) {
                if (c == ',') {
                    cells.push_back(cur);
                    cur.clear();
                } else if (c != '\r') {
                    cur += c;
                }
            }
            cells.push_back(cur);
            return cells;
        };

        const std::vector<std::string> headers = split(line);
        long ia = -1, ib = -1;
        for (std::size_t i = 0; i < headers.size(); ++i) {
            if (headers[i] == column_a)
                ia = static_cast<long>(i);
            if (headers[i] == column_b)
                ib = static_cast<long>(i);
        }
        if (ia < 0)
            raise(errc::invalid_parameter, "no column named '" + column_a + "' in " + csv_path);
        if (ib < 0)
            raise(errc::invalid_parameter, "no column named '" + column_b + "' in " + csv_path);

        std::vector<double> xs, ys;
        for (int lineno = 2; std::getline(in, line); ++lineno) {
            if (line.empty())
                continue;
            const std::vector<std::string> cells = split(line);
            if (cells.size() != headers.size())
                raise(errc::parse_error, csv_path + ": line " + std::to_string(lineno) +
                                             " has " + std::to_string(cells.size()) +
                                             " cells, expected " +
                                             std::to_string(headers.size()));
            char* end = nullptr;
            const double x = std::strtod(cells[static_cast<std::size_t>(ia)].c_str(), &end);
            const double y = std::strtod(cells[static_cast<std::size_t>(ib)].c_str(), &end);
            if (!std::isfinite(x) || !std::isfinite(y))
                continue; // rows flagged as failed upstream
            xs.push_back(x);
            ys.push_back(y);
        }
        out << fmt6(pearson(xs, ys)) << "\n";
        return 0;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return 1;
    }
}

int run_train_model(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const std::vector<FrameFile> frames =
            discover_frames(cfg.input_dir, FrameKind::pts_only);
        TrainingSet ts;
        ts.shapes.reserve(frames.size());
        for (const FrameFile& f : frames)
            ts.shapes.push_back(read_pts_file(f.pts.string()));

        const AlignedTrainingSet aligned = align_training_set(ts);
        const ShapeModel model = train_pca(aligned.aligned, cfg.p, cfg.clamp_k);
        save_model(cfg.out_path, model);
        out << "trained pdm: n=" << model.n << " t=" << model.mode_count()
            << " shapes=" << ts.shapes.size() << "\n";
        return 0;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return 1;
    }
}

} // namespace asym::pipeline
