// PCA point-distribution model: training-set alignment, covariance
// eigenanalysis, mode truncation, synthesis, parameter estimation and
// clamping, plus a plain-text serialization.

#pragma once

#include <string>
#include <vector>

#include "asym/geometry.hpp"

namespace asym {

/// Trained model. Shape vectors are laid out x-block first then y-block:
/// (x1..xn, y1..yn).
struct ShapeModel {
    std::size_t n = 0;                 // landmark count
    std::vector<double> mean;          // 2n
    std::vector<double> eigenvalues;   // t, descending
    std::vector<double> modes;         // 2n x t, row-major, orthonormal columns
    double total_variance = 0.0;       // sum of all 2n covariance eigenvalues
    double clamp_k = 3.0;

    std::size_t mode_count() const { return eigenvalues.size(); }
};

struct TrainingSet {
    std::vector<Landmarks> shapes; // uniform point count, size >= 2
};

struct AlignOptions {
    // Total mean estimates: 2 = one alignment pass plus one re-estimation.
    int mean_estimates = 2;
};

struct AlignedTrainingSet {
    TrainingSet aligned;
    Landmarks mean; // centered, unit-scaled
};

/// Align every shape to the running mean with a similarity transform
/// (rotation + translation + scale, no reflection).
AlignedTrainingSet align_training_set(const TrainingSet& ts, const AlignOptions& opts = {});

/// PCA of the aligned set keeping the smallest t with sum(lambda_i) >= p * V.
ShapeModel train_pca(const TrainingSet& aligned, double p, double clamp_k = 3.0);

/// mean + modes * b, reshaped to n points.
Landmarks synthesize(const ShapeModel& model, const std::vector<double>& b);

/// b = modes^T (y - mean): least-squares projection onto the mode subspace.
std::vector<double> estimate_params(const ShapeModel& model, const Landmarks& y);

/// Clip each b_i to [-k sqrt(lambda_i), k sqrt(lambda_i)].
std::vector<double> clamp_params(const ShapeModel& model, std::vector<double> b);

std::vector<double> to_shape_vector(const Landmarks& shape);
Landmarks from_shape_vector(const std::vector<double>& v);

/// Plain-text model file, 17 significant digits, bit-exact round-trip.
std::string serialize_model(const ShapeModel& model);
ShapeModel parse_model(const std::string& text);
void save_model(const std::string& path, const ShapeModel& model);
ShapeModel load_model(const std::string& path);

} // namespace asym
