#include "asym/shape_model.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <Eigen/Dense>

namespace asym {

namespace {

void validate_training_set(const TrainingSet& ts) {
    if (ts.shapes.size() < 2)
        raise(errc::invalid_parameter,
              "training set needs at least 2 shapes, got " + std::to_string(ts.shapes.size()));
    const std::size_t n = ts.shapes.front().size();
    if (n == 0)
        raise(errc::invalid_shape, "training shapes are empty");
    for (const Landmarks& s : ts.shapes)
        if (s.size() != n)
            raise(errc::shape_mismatch, "training shapes have differing point counts");
}

// Similarity fit of src onto dst (rotation + uniform scale + translation,
// no reflection), minimizing the summed squared point distances.
Landmarks similarity_fit(const Landmarks& src, const Landmarks& dst) {
    const Point c_src = centroid(src);
    const Point c_dst = centroid(dst);
    const Landmarks a = center(src);
    const Landmarks b = center(dst);

    double norm_a_sq = 0.0;
    Mat2 m{0, 0, 0, 0};
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Point& pa = a.points[i];
        const Point& pb = b.points[i];
        norm_a_sq += pa.x * pa.x + pa.y * pa.y;
        m.a00 += pb.x * pa.x;
        m.a01 += pb.x * pa.y;
        m.a10 += pb.y * pa.x;
        m.a11 += pb.y * pa.y;
    }
    if (!(norm_a_sq > 1e-300))
        raise(errc::degenerate_shape, "shape collapses to a single point");

    const Svd2 d = svd2(m);
    Mat2 r = d.v * d.u.transposed();
    double trace_gain = d.s0 + d.s1;
    if (r.det() < 0.0) {
        Mat2 q = d.v;
        q.a01 = -q.a01;
        q.a11 = -q.a11;
        r = q * d.u.transposed();
        trace_gain = d.s0 - d.s1;
    }
    const double scale = trace_gain / norm_a_sq;
    if (!(scale > 1e-300))
        raise(errc::degenerate_shape, "similarity fit collapses the shape");

    Landmarks out = src;
    for (std::size_t i = 0; i < a.size(); ++i)
        out.points[i] = r.apply(a.points[i]) * scale + c_dst;
    return out;
}

Landmarks average_shape(const std::vector<Landmarks>& shapes) {
    Landmarks mean;
    mean.points.assign(shapes.front().size(), Point{});
    for (const Landmarks& s : shapes)
        for (std::size_t i = 0; i < s.size(); ++i)
            mean.points[i] = mean.points[i] + s.points[i];
    const double inv = 1.0 / static_cast<double>(shapes.size());
    for (Point& p : mean.points)
        p = p * inv;
    return mean;
}

} // namespace

std::vector<double> to_shape_vector(const Landmarks& shape) {
    const std::size_t n = shape.size();
    std::vector<double> v(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = shape.points[i].x;
        v[n + i] = shape.points[i].y;
    }
    return v;
}

Landmarks from_shape_vector(const std::vector<double>& v) {
    if (v.size() % 2 != 0)
        raise(errc::invalid_parameter, "shape vector length must be even");
    const std::size_t n = v.size() / 2;
    Landmarks out;
    out.points.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        out.points[i] = {v[i], v[n + i]};
    return out;
}

AlignedTrainingSet align_training_set(const TrainingSet& ts, const AlignOptions& opts) {
    validate_training_set(ts);
    if (opts.mean_estimates < 2)
        raise(errc::invalid_parameter, "mean_estimates must be >= 2");

    Landmarks mean = unit_scale(center(average_shape(ts.shapes)));
    std::vector<Landmarks> aligned = ts.shapes;
    for (int pass = 1; pass < opts.mean_estimates; ++pass) {
        for (std::size_t i = 0; i < aligned.size(); ++i)
            aligned[i] = similarity_fit(ts.shapes[i], mean);
        mean = unit_scale(center(average_shape(aligned)));
    }
    return {TrainingSet{std::move(aligned)}, std::move(mean)};
}

ShapeModel train_pca(const TrainingSet& aligned, double p, double clamp_k) {
    validate_training_set(aligned);
    if (!(p > 0.0) || p > 1.0)
        raise(errc::invalid_parameter, "variance proportion must lie in (0, 1]");

    const std::size_t n_shapes = aligned.shapes.size();
    const std::size_t dim = 2 * aligned.shapes.front().size();

    Eigen::MatrixXd data(dim, n_shapes);
    for (std::size_t j = 0; j < n_shapes; ++j) {
        const std::vector<double> v = to_shape_vector(aligned.shapes[j]);
        for (std::size_t i = 0; i < dim; ++i)
            data(static_cast<long>(i), static_cast<long>(j)) = v[i];
    }
    const Eigen::VectorXd mean = data.rowwise().mean();
    data.colwise() -= mean;

    const Eigen::MatrixXd cov =
        data * data.transpose() / static_cast<double>(n_shapes - 1);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
    if (eig.info() != Eigen::Success)
        raise(errc::invalid_input, "eigendecomposition failed to converge");

    // ascending from the solver; walk backwards for descending order
    const Eigen::VectorXd& evals = eig.eigenvalues();
    const Eigen::MatrixXd& evecs = eig.eigenvectors();
    const double total_variance = std::max(0.0, evals.sum());
    const double lambda_max = std::max(0.0, evals(static_cast<long>(dim) - 1));

    std::vector<std::size_t> order;
    for (std::size_t k = 0; k < dim; ++k) {
        const std::size_t idx = dim - 1 - k;
        const double lambda = evals(static_cast<long>(idx));
        if (lambda <= 0.0 || lambda < 1e-12 * lambda_max)
            break; // zero-variance directions are dropped before selection
        order.push_back(idx);
    }

    std::size_t t = 0;
    double cum = 0.0;
    while (t < order.size() && cum < p * total_variance) {
        cum += evals(static_cast<long>(order[t]));
        ++t;
    }

    ShapeModel model;
    model.n = dim / 2;
    model.clamp_k = clamp_k;
    model.total_variance = total_variance;
    model.mean.assign(mean.data(), mean.data() + dim);
    model.eigenvalues.resize(t);
    model.modes.assign(dim * t, 0.0);
    for (std::size_t k = 0; k < t; ++k) {
        model.eigenvalues[k] = evals(static_cast<long>(order[k]));
        for (std::size_t i = 0; i < dim; ++i)
            model.modes[i * t + k] = evecs(static_cast<long>(i), static_cast<long>(order[k]));
    }
    return model;
}

Landmarks synthesize(const ShapeModel& model, const std::vector<double>& b) {
    if (b.size() != model.mode_count())
        raise(errc::invalid_parameter, "parameter vector length " + std::to_string(b.size()) +
                                           " != mode count " +
                                           std::to_string(model.mode_count()));
    const std::size_t dim = 2 * model.n;
    const std::size_t t = model.mode_count();
    std::vector<double> v = model.mean;
    for (std::size_t i = 0; i < dim; ++i) {
        double acc = 0.0;
        for (std::size_t k = 0; k < t; ++k)
            acc += model.modes[i * t + k] * b[k];
        v[i] += acc;
    }
    return from_shape_vector(v);
}

std::vector<double> estimate_params(const ShapeModel& model, const Landmarks& y) {
    if (y.size() != model.n)
        raise(errc::shape_mismatch, "shape has " + std::to_string(y.size()) +
                                        " points, model expects " + std::to_string(model.n));
    const std::size_t dim = 2 * model.n;
    const std::size_t t = model.mode_count();
    const std::vector<double> v = to_shape_vector(y);
    std::vector<double> b(t, 0.0);
    for (std::size_t k = 0; k < t; ++k) {
        double acc = 0.0;
        for (std::size_t i = 0; i < dim; ++i)
            acc += model.modes[i * t + k] * (v[i] - model.mean[i]);
        b[k] = acc;
    }
    return b;
}

std::vector<double> clamp_params(const ShapeModel& model, std::vector<double> b) {
    if (b.size() != model.mode_count())
        raise(errc::invalid_parameter, "parameter vector length mismatch");
    for (std::size_t k = 0; k < b.size(); ++k) {
        const double limit = model.clamp_k * std::sqrt(std::max(0.0, model.eigenvalues[k]));
        if (b[k] > limit)
            b[k] = limit;
        else if (b[k] < -limit)
            b[k] = -limit;
    }
    return b;
}

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

std::string serialize_model(const ShapeModel& model) {
    std::string out = "pdm v1 n=" + std::to_string(model.n) + " t=" +
                      std::to_string(model.mode_count()) + " k=" + fmt_double(model.clamp_k) +
                      "\n";
    for (std::size_t i = 0; i < model.mean.size(); ++i)
        out += fmt_double(model.mean[i]) + (i + 1 == model.mean.size() ? "\n" : " ");
    if (model.mean.empty())
        out += "\n";
    for (std::size_t i = 0; i < model.eigenvalues.size(); ++i)
        out += fmt_double(model.eigenvalues[i]) + (i + 1 == model.eigenvalues.size() ? "\n" : " ");
    const std::size_t t = model.mode_count();
    for (std::size_t i = 0; i < 2 * model.n && t > 0; ++i) {
        for (std::size_t k = 0; k < t; ++k)
            out += fmt_double(model.modes[i * t + k]) + (k + 1 == t ? "\n" : " ");
    }
    return out;
}

ShapeModel parse_model(const std::string& text) {
    std::istringstream in(text);
    std::string magic, version;
    in >> magic >> version;
    if (magic != "pdm" || version != "v1")
        raise(errc::parse_error, "not a pdm v1 model file");

    auto field = [&](const char* name) -> std::string {
        std::string tok;
        if (!(in >> tok))
            raise(errc::parse_error, std::string("missing model header field ") + name);
        const std::string prefix = std::string(name) + "=";
        if (tok.rfind(prefix, 0) != 0)
            raise(errc::parse_error, "expected header field " + prefix + "..., got " + tok);
        return tok.substr(prefix.size());
    };

    ShapeModel model;
    model.n = std::stoul(field("n"));
    const std::size_t t = std::stoul(field("t"));
    model.clamp_k = std::stod(field("k"));

    auto read_doubles = [&](std::size_t count, const char* what) {
        std::vector<double> v(count);
        for (std::size_t i = 0; i < count; ++i)
            if (!(in >> v[i]))
                raise(errc::parse_error, std::string("truncated model file reading ") + what);
        return v;
    };

    model.mean = read_doubles(2 * model.n, "mean");
    model.eigenvalues = read_doubles(t, "eigenvalues");
    model.modes = read_doubles(2 * model.n * t, "modes");

    // the file does not carry the full spectrum; fall back to the retained sum
    model.total_variance = 0.0;
    for (double l : model.eigenvalues)
        model.total_variance += l;
    return model;
}

void save_model(const std::string& path, const ShapeModel& model) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        raise(errc::invalid_input, "cannot write " + path);
    const std::string text = serialize_model(model);
    out.write(text.data(), static_cast<long>(text.size()));
}

ShapeModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        raise(errc::invalid_input, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_model(ss.str());
}

} // namespace asym
