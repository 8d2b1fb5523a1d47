#ifndef VQC_HARNESS_HPP
#define VQC_HARNESS_HPP

#include <array>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vqc/verifier.hpp"

namespace vqc {

// Missing, unreadable, or unwritable files.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Files that open fine but do not mean what they should: malformed JSON or
// CSV, wrong IDX magic, truncated payloads, arity mismatches.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct WeightsFile {
    std::string model;  // qcl | ccqc | pv | custom
    std::vector<double> weights;
    std::string circuit_path;  // custom only
};

WeightsFile load_weights(const std::string& path);
std::optional<ModelKind> model_kind_of(const std::string& name);

struct DatasetSample {
    std::vector<double> features;  // radians after scaling
    int label = 0;
};

// Rotation encodings are 2*pi periodic; scaling features into [0, pi] keeps
// each encoded amplitude monotone in its feature. Overridable per call.
inline constexpr double kDefaultFeatureScale = std::numbers::pi;

// Keeps rows whose label column equals one of the two class names (first ->
// label 0, second -> 1), then min-max scales each feature column of the kept
// rows to [0, scale_max]. A requested class that never occurs in a nonempty
// file is reported as DataError.
std::vector<DatasetSample> load_iris(const std::string& path,
                                     const std::pair<std::string, std::string>& classes,
                                     double scale_max = kDefaultFeatureScale);

// IDX image/label pair; 28x28 images are average-pooled over 7x7 blocks into
// 16 features (row-major blocks), each mapped to [0, scale_max] by value /
// 255 * scale_max. Keeps the two digits, first -> label 0, second -> 1.
std::vector<DatasetSample> load_mnist_4x4(const std::string& images_path,
                                          const std::string& labels_path,
                                          std::pair<int, int> digits,
                                          double scale_max = kDefaultFeatureScale);

const char* mode_name(AbsMode m);
AbsMode mode_of(const std::string& name);

struct Report {
    Status status = Status::Unknown;
    std::string cls;  // class bits, observed[0] leftmost
    double epsilon = 0.0;
    std::optional<double> max_eps;
    std::optional<double> bracket_lo;
    std::optional<double> bracket_hi;
    std::optional<Environment> witness;
    std::int64_t regions_explored = 0;
    int max_depth_reached = 0;
    AbsMode mode = AbsMode::Symbolic;
    bool clip = true;
    double runtime_ms = 0.0;
    // class bits -> aggregate probability bounds at the root box
    std::vector<std::pair<std::string, std::array<double, 2>>> per_class_intervals;
};

// Report for one verification run; per-class intervals come from a fresh
// abstract run over the root ball under the problem's mode/clip.
Report make_report(const VerificationProblem& p, const Verdict& v, double runtime_ms);
void add_max_eps(Report& r, const MaxEpsResult& m);

std::string report_to_json(const Report& r);
Report report_from_json(const std::string& text);
std::string summary_line(const Report& r);

// Writes the JSON to path ("" writes nothing) and prints the one-line
// summary to stdout.
void emit_report(const Report& r, const std::string& path);

}  // namespace vqc

#endif
