#include "vqc/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace vqc {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("cannot read '" + path + "'");
    return std::move(buf).str();
}

int model_arity(ModelKind k) {
    switch (k) {
        case ModelKind::QCL: return 4;
        case ModelKind::CCQC: return 36;
        default: return 8;
    }
}

double parse_csv_double(const std::string& field, const std::string& path, int line) {
    double v = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last)
        throw DataError(path + ":" + std::to_string(line) + ": malformed numeric field '" +
                        field + "'");
    return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    fields.push_back(cur);
    for (std::string& f : fields) {
        const size_t b = f.find_first_not_of(" \t");
        const size_t e = f.find_last_not_of(" \t");
        f = b == std::string::npos ? std::string() : f.substr(b, e - b + 1);
    }
    return fields;
}

std::uint32_t read_be32(const std::string& bytes, size_t at, const std::string& path) {
    if (at + 4 > bytes.size()) throw DataError("truncated IDX file '" + path + "'");
    return (std::uint32_t(std::uint8_t(bytes[at])) << 24) |
           (std::uint32_t(std::uint8_t(bytes[at + 1])) << 16) |
           (std::uint32_t(std::uint8_t(bytes[at + 2])) << 8) |
           std::uint32_t(std::uint8_t(bytes[at + 3]));
}

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

std::optional<ModelKind> model_kind_of(const std::string& name) {
    if (name == "qcl") return ModelKind::QCL;
    if (name == "ccqc") return ModelKind::CCQC;
    if (name == "pv") return ModelKind::PV;
    return std::nullopt;
}

WeightsFile load_weights(const std::string& path) {
    const std::string text = read_file(path);
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw DataError("weights file '" + path + "' is not valid JSON: " + e.what());
    }
    if (!j.is_object() || !j.contains("model") || !j["model"].is_string())
        throw DataError("weights file '" + path + "' needs a string field \"model\"");
    if (!j.contains("weights") || !j["weights"].is_array())
        throw DataError("weights file '" + path + "' needs an array field \"weights\"");

    WeightsFile w;
    w.model = j["model"].get<std::string>();
    for (const json& v : j["weights"]) {
        if (!v.is_number())
            throw DataError("weights file '" + path + "': non-numeric weight");
        w.weights.push_back(v.get<double>());
    }
    if (w.model == "custom") {
        if (!j.contains("circuit_path") || !j["circuit_path"].is_string())
            throw DataError("weights file '" + path +
                            "': model \"custom\" requires \"circuit_path\"");
        w.circuit_path = j["circuit_path"].get<std::string>();
        return w;
    }
    const std::optional<ModelKind> kind = model_kind_of(w.model);
    if (!kind)
        throw DataError("weights file '" + path + "': unknown model \"" + w.model + "\"");
    const int want = model_arity(*kind);
    if (static_cast<int>(w.weights.size()) != want)
        throw DataError(w.model + " expects " + std::to_string(want) + " weights, got " +
                        std::to_string(w.weights.size()));
    return w;
}

std::vector<DatasetSample> load_iris(const std::string& path,
                                     const std::pair<std::string, std::string>& classes,
                                     double scale_max) {
    const std::string text = read_file(path);
    std::istringstream in(text);
    std::string line;
    std::vector<DatasetSample> rows;
    bool saw_data = false;
    bool saw_first = false;
    bool saw_second = false;
    for (int line_no = 1; std::getline(in, line); ++line_no) {
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() == 1 && fields[0].empty()) continue;
        if (fields.size() != 5)
            throw DataError(path + ":" + std::to_string(line_no) +
                            ": expected 4 feature columns and a label");
        if (line_no == 1) {
            // Header row: first field not numeric.
            double probe = 0.0;
            auto [ptr, ec] =
                std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), probe);
            if (ec != std::errc{} || ptr != fields[0].data() + fields[0].size()) continue;
        }
        saw_data = true;
        const std::string& label = fields[4];
        if (label.empty())
            throw DataError(path + ":" + std::to_string(line_no) + ": empty label");
        int cls;
        if (label == classes.first) {
            cls = 0;
            saw_first = true;
        } else if (label == classes.second) {
            cls = 1;
            saw_second = true;
        } else {
            continue;
        }
        DatasetSample s;
        for (int k = 0; k < 4; ++k)
            s.features.push_back(parse_csv_double(fields[k], path, line_no));
        s.label = cls;
        rows.push_back(std::move(s));
    }
    if (saw_data && !saw_first)
        throw DataError("unknown label '" + classes.first + "' in '" + path + "'");
    if (saw_data && !saw_second)
        throw DataError("unknown label '" + classes.second + "' in '" + path + "'");

    for (int k = 0; k < 4 && !rows.empty(); ++k) {
        double lo = rows[0].features[k];
        double hi = lo;
        for (const DatasetSample& s : rows) {
            lo = std::min(lo, s.features[k]);
            hi = std::max(hi, s.features[k]);
        }
        for (DatasetSample& s : rows)
            s.features[k] = hi == lo ? 0.0 : (s.features[k] - lo) / (hi - lo) * scale_max;
    }
    return rows;
}

std::vector<DatasetSample> load_mnist_4x4(const std::string& images_path,
                                          const std::string& labels_path,
                                          std::pair<int, int> digits, double scale_max) {
    const std::string img = read_file(images_path);
    const std::string lbl = read_file(labels_path);
    if (read_be32(img, 0, images_path) != 0x00000803u)
        throw DataError("IDX magic mismatch in '" + images_path + "' (want 0x00000803)");
    if (read_be32(lbl, 0, labels_path) != 0x00000801u)
        throw DataError("IDX magic mismatch in '" + labels_path + "' (want 0x00000801)");
    const std::uint32_t n = read_be32(img, 4, images_path);
    const std::uint32_t rows = read_be32(img, 8, images_path);
    const std::uint32_t cols = read_be32(img, 12, images_path);
    if (rows != 28 || cols != 28)
        throw DataError("'" + images_path + "' holds " + std::to_string(rows) + "x" +
                        std::to_string(cols) + " images, expected 28x28");
    if (read_be32(lbl, 4, labels_path) != n)
        throw DataError("image/label counts differ between '" + images_path + "' and '" +
                        labels_path + "'");
    if (img.size() < 16 + size_t{n} * 28 * 28)
        throw DataError("truncated IDX file '" + images_path + "'");
    if (lbl.size() < 8 + size_t{n})
        throw DataError("truncated IDX file '" + labels_path + "'");

    std::vector<DatasetSample> out;
    for (std::uint32_t i = 0; i < n; ++i) {
        const int digit = std::uint8_t(lbl[8 + i]);
        int cls;
        if (digit == digits.first) {
            cls = 0;
        } else if (digit == digits.second) {
            cls = 1;
        } else {
            continue;
        }
        const size_t base = 16 + size_t{i} * 28 * 28;
        DatasetSample s;
        s.label = cls;
        for (int by = 0; by < 4; ++by) {
            for (int bx = 0; bx < 4; ++bx) {
                double sum = 0.0;
                for (int y = 0; y < 7; ++y)
                    for (int x = 0; x < 7; ++x)
                        sum += std::uint8_t(img[base + (by * 7 + y) * 28 + (bx * 7 + x)]);
                s.features.push_back(sum / 49.0 / 255.0 * scale_max);
            }
        }
        out.push_back(std::move(s));
    }
    return out;
}

const char* mode_name(AbsMode m) {
    return m == AbsMode::Stepwise ? "stepwise" : "symbolic";
}

AbsMode mode_of(const std::string& name) {
    if (name == "stepwise") return AbsMode::Stepwise;
    if (name == "symbolic") return AbsMode::Symbolic;
    throw DataError("unknown mode '" + name + "'");
}

Report make_report(const VerificationProblem& p, const Verdict& v, double runtime_ms) {
    Report r;
    r.status = v.status;
    r.cls = render_class(v.target_class, static_cast<int>(p.observed.size()));
    r.epsilon = p.eps;
    r.witness = v.witness;
    r.regions_explored = v.regions_explored;
    r.max_depth_reached = v.max_depth_reached;
    r.mode = p.config.mode;
    r.clip = p.config.clipped;
    r.runtime_ms = runtime_ms;

    ScopedStrictSoundness strict(true);
    const AbstractDistribution dist =
        run_abstract(p.circuit, ball_env(p.center, p.eps), p.config.mode, p.config.clipped);
    const std::uint64_t n_classes = std::uint64_t{1} << p.observed.size();
    for (std::uint64_t b = 0; b < n_classes; ++b) {
        const RealInterval agg = class_aggregate(dist, p.observed, b);
        r.per_class_intervals.emplace_back(
            render_class(b, static_cast<int>(p.observed.size())),
            std::array<double, 2>{agg.lo, agg.hi});
    }
    return r;
}

void add_max_eps(Report& r, const MaxEpsResult& m) {
    r.max_eps = m.value;
    r.bracket_lo = m.bracket_lo;
    r.bracket_hi = m.bracket_hi;
}

std::string report_to_json(const Report& r) {
    json j;
    j["status"] = status_name(r.status);
    j["class"] = r.cls;
    j["epsilon"] = r.epsilon;
    if (r.max_eps) {
        j["max_epsilon"] = *r.max_eps;
        j["bracket_lo"] = *r.bracket_lo;
        j["bracket_hi"] = *r.bracket_hi;
    }
    if (r.witness) {
        json w = json::object();
        for (const auto& [name, value] : *r.witness) w[name] = value;
        j["witness"] = w;
    }
    j["regions_explored"] = r.regions_explored;
    j["max_depth_reached"] = r.max_depth_reached;
    j["mode"] = mode_name(r.mode);
    j["clip"] = r.clip;
    j["runtime_ms"] = r.runtime_ms;
    json pci = json::object();
    for (const auto& [bits, bounds] : r.per_class_intervals)
        pci[bits] = json::array({bounds[0], bounds[1]});
    j["per_class_intervals"] = pci;
    return j.dump(2) + "\n";
}

Report report_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw DataError(std::string("report is not valid JSON: ") + e.what());
    }
    Report r;
    const std::string status = j.at("status").get<std::string>();
    if (status == "robust") {
        r.status = Status::Robust;
    } else if (status == "falsified") {
        r.status = Status::Falsified;
    } else if (status == "unknown") {
        r.status = Status::Unknown;
    } else {
        throw DataError("unknown status '" + status + "'");
    }
    r.cls = j.at("class").get<std::string>();
    r.epsilon = j.at("epsilon").get<double>();
    if (j.contains("max_epsilon")) {
        r.max_eps = j["max_epsilon"].get<double>();
        r.bracket_lo = j.at("bracket_lo").get<double>();
        r.bracket_hi = j.at("bracket_hi").get<double>();
    }
    if (j.contains("witness")) {
        Environment w;
        for (const auto& [name, value] : j["witness"].items())
            w[name] = value.get<double>();
        r.witness = std::move(w);
    }
    r.regions_explored = j.at("regions_explored").get<std::int64_t>();
    r.max_depth_reached = j.at("max_depth_reached").get<int>();
    r.mode = mode_of(j.at("mode").get<std::string>());
    r.clip = j.at("clip").get<bool>();
    r.runtime_ms = j.at("runtime_ms").get<double>();
    for (const auto& [bits, bounds] : j.at("per_class_intervals").items())
        r.per_class_intervals.emplace_back(
            bits, std::array<double, 2>{bounds.at(0).get<double>(),
                                        bounds.at(1).get<double>()});
    return r;
}

std::string summary_line(const Report& r) {
    std::string line = status_name(r.status);
    line += " class " + r.cls;
    if (r.max_eps) {
        line += " max_epsilon " + fmt_double(*r.max_eps) + " bracket [" +
                fmt_double(*r.bracket_lo) + ", " + fmt_double(*r.bracket_hi) + "]";
    } else {
        line += " epsilon " + fmt_double(r.epsilon);
    }
    line += " regions " + std::to_string(r.regions_explored) + " depth " +
            std::to_string(r.max_depth_reached) + " (" + fmt_double(r.runtime_ms) + " ms)";
    return line;
}

void emit_report(const Report& r, const std::string& path) {
    if (!path.empty()) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw IoError("cannot write report to '" + path + "'");
        out << report_to_json(r);
        if (!out) throw IoError("cannot write report to '" + path + "'");
    }
    std::puts(summary_line(r).c_str());
}

}  // namespace vqc
