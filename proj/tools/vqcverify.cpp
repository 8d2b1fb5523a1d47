#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "vqc/harness.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw vqc::IoError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

vqc::Circuit load_circuit(const std::string& path) {
    vqc::Circuit c;
    try {
        c = vqc::parse_circuit(read_file(path));
    } catch (const vqc::ParseError& e) {
        throw vqc::DataError(path + ": " + e.what());
    }
    const std::vector<std::string> problems = vqc::validate_circuit(c);
    if (!problems.empty()) throw vqc::DataError(path + ": " + problems.front());
    return c;
}

vqc::Environment bind_inputs(const vqc::Circuit& c, const std::vector<double>& values) {
    if (values.size() != c.input_vars.size())
        throw vqc::DataError("circuit has " + std::to_string(c.input_vars.size()) +
                             " input variables, got " + std::to_string(values.size()) +
                             " values");
    vqc::Environment env;
    for (size_t i = 0; i < values.size(); ++i) env[c.input_vars[i]] = values[i];
    return env;
}

struct VerifyOpts {
    std::string circuit_path;
    std::vector<double> inputs;
    std::string mode = "symbolic";
    std::string clip = "on";
    int max_depth = 20;
    double min_width = 1e-6;
    bool parallel = false;
    std::string out;
};

void add_verify_flags(CLI::App* cmd, VerifyOpts& o) {
    cmd->add_option("-c,--circuit", o.circuit_path, "circuit file (DSL text)")->required();
    cmd->add_option("-i,--inputs", o.inputs, "input values, declaration order")
        ->required()
        ->delimiter(',');
    cmd->add_option("--mode", o.mode, "abstract mode")
        ->check(CLI::IsMember({"stepwise", "symbolic"}));
    cmd->add_option("--clip", o.clip, "clip amplitudes/probabilities")
        ->check(CLI::IsMember({"on", "off"}));
    cmd->add_option("--max-depth", o.max_depth, "refinement depth budget");
    cmd->add_option("--min-width", o.min_width, "narrowest splittable box");
    cmd->add_flag("--parallel", o.parallel, "evaluate worklist levels with OpenMP");
    cmd->add_option("--out", o.out, "write the JSON report here");
}

vqc::RefinementConfig config_of(const VerifyOpts& o) {
    vqc::RefinementConfig cfg;
    cfg.max_depth = o.max_depth;
    cfg.min_width = o.min_width;
    cfg.mode = vqc::mode_of(o.mode);
    cfg.clipped = o.clip == "on";
    cfg.parallel = o.parallel;
    return cfg;
}

int exit_code_of(vqc::Status s) {
    switch (s) {
        case vqc::Status::Robust: return 0;
        case vqc::Status::Falsified: return 1;
        default: return 2;
    }
}

int do_run(const VerifyOpts& o) {
    const vqc::Circuit c = load_circuit(o.circuit_path);
    const vqc::Environment env = bind_inputs(c, o.inputs);
    const vqc::ConcreteResult r = vqc::run_concrete(c, env);
    for (size_t e = 0; e < r.dist.probs.size(); ++e)
        std::printf("p(%s) = %.6f\n", vqc::render_basis(e, c.n_qubits).c_str(),
                    r.dist.probs[e]);
    std::printf("class = %s (probability %.6f)\n",
                vqc::render_class(r.cls, static_cast<int>(c.observed.size())).c_str(),
                r.prob);
    return 0;
}

void print_witness(const vqc::Verdict& v) {
    if (!v.witness) return;
    std::string line = "witness";
    for (const auto& [name, value] : *v.witness) {
        char buf[48];
        std::snprintf(buf, sizeof buf, " %s=%.17g", name.c_str(), value);
        line += buf;
    }
    std::puts(line.c_str());
}

int do_verify(const VerifyOpts& o, double eps) {
    const auto t0 = Clock::now();
    vqc::VerificationProblem p;
    p.circuit = load_circuit(o.circuit_path);
    p.center = bind_inputs(p.circuit, o.inputs);
    p.eps = eps;
    p.observed = p.circuit.observed;
    p.config = config_of(o);
    const vqc::Verdict v = vqc::verify_robust(p);
    const vqc::Report report = vqc::make_report(p, v, ms_since(t0));
    vqc::emit_report(report, o.out);
    print_witness(v);
    return exit_code_of(v.status);
}

int do_max_eps(const VerifyOpts& o, double eps_min, double eps_max, double tau) {
    const auto t0 = Clock::now();
    vqc::VerificationProblem p;
    p.circuit = load_circuit(o.circuit_path);
    p.center = bind_inputs(p.circuit, o.inputs);
    p.observed = p.circuit.observed;
    p.config = config_of(o);
    const vqc::MaxEpsResult m = vqc::max_epsilon(p.circuit, p.center, p.observed, eps_min,
                                                 eps_max, tau, p.config);
    p.eps = m.robust_at_min ? m.value : eps_min;
    const vqc::Verdict v = vqc::verify_robust(p);
    vqc::Report report = vqc::make_report(p, v, ms_since(t0));
    vqc::add_max_eps(report, m);
    vqc::emit_report(report, o.out);
    print_witness(v);
    if (!m.diagnostic.empty()) std::fprintf(stderr, "note: %s\n", m.diagnostic.c_str());
    return exit_code_of(v.status);
}

int do_model(const std::string& kind, const std::string& weights_path,
             const std::string& emit_path) {
    const vqc::WeightsFile w = vqc::load_weights(weights_path);
    if (w.model != kind)
        throw vqc::DataError("weights file '" + weights_path + "' is for model '" +
                             w.model + "', asked for '" + kind + "'");
    const std::optional<vqc::ModelKind> mk = vqc::model_kind_of(kind);
    if (!mk) throw vqc::DataError("unknown model '" + kind + "'");
    const std::string text = vqc::print_circuit(vqc::build_model(*mk, w.weights));
    if (emit_path.empty()) {
        std::fputs(text.c_str(), stdout);
        return 0;
    }
    std::ofstream out(emit_path, std::ios::binary);
    if (!out) throw vqc::IoError("cannot write '" + emit_path + "'");
    out << text;
    if (!out) throw vqc::IoError("cannot write '" + emit_path + "'");
    std::printf("wrote %s\n", emit_path.c_str());
    return 0;
}

int do_dataset(const std::string& kind, const std::vector<std::string>& paths,
               const std::string& classes, double scale, const std::string& out_path) {
    const size_t comma = classes.find(',');
    if (comma == std::string::npos)
        throw vqc::DataError("--classes wants two comma-separated names");
    const std::string a = classes.substr(0, comma);
    const std::string b = classes.substr(comma + 1);

    std::vector<vqc::DatasetSample> samples;
    if (kind == "iris") {
        if (paths.size() != 1) throw vqc::DataError("iris wants one CSV path");
        samples = vqc::load_iris(paths[0], {a, b}, scale);
    } else {
        if (paths.size() != 2)
            throw vqc::DataError("mnist wants an images path and a labels path");
        int da = 0;
        int db = 0;
        try {
            da = std::stoi(a);
            db = std::stoi(b);
        } catch (const std::exception&) {
            throw vqc::DataError("mnist classes must be digits, got '" + classes + "'");
        }
        samples = vqc::load_mnist_4x4(paths[0], paths[1], {da, db}, scale);
    }

    nlohmann::json j;
    j["count"] = samples.size();
    nlohmann::json arr = nlohmann::json::array();
    for (const vqc::DatasetSample& s : samples)
        arr.push_back({{"features", s.features}, {"label", s.label}});
    j["samples"] = std::move(arr);
    const std::string text = j.dump(2) + "\n";
    if (out_path.empty()) {
        std::fputs(text.c_str(), stdout);
        return 0;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw vqc::IoError("cannot write '" + out_path + "'");
    out << text;
    if (!out) throw vqc::IoError("cannot write '" + out_path + "'");
    std::printf("%zu samples -> %s\n", samples.size(), out_path.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"robustness verifier for variational quantum circuit classifiers"};
    app.require_subcommand(1);

    VerifyOpts run_o;
    CLI::App* run_cmd = app.add_subcommand("run", "concrete execution");
    run_cmd->add_option("-c,--circuit", run_o.circuit_path, "circuit file (DSL text)")
        ->required();
    run_cmd->add_option("-i,--inputs", run_o.inputs, "input values, declaration order")
        ->required()
        ->delimiter(',');

    VerifyOpts verify_o;
    double eps = 0.0;
    CLI::App* verify_cmd = app.add_subcommand("verify", "decide robustness at radius eps");
    add_verify_flags(verify_cmd, verify_o);
    verify_cmd->add_option("-e,--eps", eps, "perturbation radius (l-inf)")->required();

    VerifyOpts maxeps_o;
    double eps_min = 0.0;
    double eps_max = 0.0;
    double tau = 0.0;
    CLI::App* maxeps_cmd =
        app.add_subcommand("max-eps", "largest radius still proved robust");
    add_verify_flags(maxeps_cmd, maxeps_o);
    maxeps_cmd->add_option("--eps-min", eps_min, "search start")->required();
    maxeps_cmd->add_option("--eps-max", eps_max, "search ceiling")->required();
    maxeps_cmd->add_option("--tau", tau, "bracket tolerance")->required();

    std::string model_kind;
    std::string model_weights;
    std::string model_emit;
    CLI::App* model_cmd = app.add_subcommand("model", "materialize a benchmark ansatz");
    model_cmd->add_option("-k,--kind", model_kind, "qcl | ccqc | pv")
        ->required()
        ->check(CLI::IsMember({"qcl", "ccqc", "pv"}));
    model_cmd->add_option("-w,--weights", model_weights, "weights JSON file")->required();
    model_cmd->add_option("--emit", model_emit, "write DSL text here (default stdout)");

    std::string ds_kind;
    std::vector<std::string> ds_paths;
    std::string ds_classes;
    std::string ds_out;
    double ds_scale = vqc::kDefaultFeatureScale;
    CLI::App* ds_cmd = app.add_subcommand("dataset", "load and normalize a dataset");
    ds_cmd->add_option("kind", ds_kind, "iris | mnist")
        ->required()
        ->check(CLI::IsMember({"iris", "mnist"}));
    ds_cmd->add_option("paths", ds_paths, "CSV path, or IDX images + labels")
        ->required()
        ->expected(1, 2);
    ds_cmd->add_option("--classes", ds_classes, "the two class names or digits")
        ->required();
    ds_cmd->add_option("--scale", ds_scale, "feature range upper end (radians)");
    ds_cmd->add_option("--out", ds_out, "write samples JSON here (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 64;
    }

    try {
        if (run_cmd->parsed()) return do_run(run_o);
        if (verify_cmd->parsed()) return do_verify(verify_o, eps);
        if (maxeps_cmd->parsed()) return do_max_eps(maxeps_o, eps_min, eps_max, tau);
        if (model_cmd->parsed()) return do_model(model_kind, model_weights, model_emit);
        if (ds_cmd->parsed())
            return do_dataset(ds_kind, ds_paths, ds_classes, ds_scale, ds_out);
    } catch (const vqc::IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 66;
    } catch (const vqc::DataError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 65;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 64;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 70;
    }
    return 64;
}
