#include "vqc/circuit.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <set>
#include <sstream>

namespace vqc {

bool is_encoding(GateKind k) {
    return k == GateKind::EncRx || k == GateKind::EncRy || k == GateKind::EncRz;
}

bool is_rotation(GateKind k) {
    switch (k) {
        case GateKind::EncRx:
        case GateKind::EncRy:
        case GateKind::EncRz:
        case GateKind::ParamRx:
        case GateKind::ParamRy:
        case GateKind::ParamRz:
            return true;
        default:
            return false;
    }
}

const char* gate_name(GateKind k) {
    switch (k) {
        case GateKind::EncRx:
        case GateKind::ParamRx:
            return "rx";
        case GateKind::EncRy:
        case GateKind::ParamRy:
            return "ry";
        case GateKind::EncRz:
        case GateKind::ParamRz:
            return "rz";
        case GateKind::CX:
            return "cx";
        case GateKind::H:
            return "h";
        default:
            return "x";
    }
}

std::string render_basis(std::uint64_t value, int n_qubits) {
    std::string out(static_cast<size_t>(n_qubits), '0');
    for (int q = 0; q < n_qubits; ++q)
        if (value >> q & 1) out[static_cast<size_t>(n_qubits - 1 - q)] = '1';
    return out;
}

std::uint64_t parse_basis(const std::string& bits) {
    if (bits.empty()) throw std::invalid_argument("basis label must be non-empty");
    std::uint64_t value = 0;
    const int n = static_cast<int>(bits.size());
    for (int i = 0; i < n; ++i) {
        const char c = bits[static_cast<size_t>(i)];
        if (c != '0' && c != '1') throw std::invalid_argument("basis label must be binary");
        if (c == '1') value |= std::uint64_t{1} << (n - 1 - i);
    }
    return value;
}

std::uint64_t class_of_basis(std::uint64_t e, const std::vector<int>& observed) {
    std::uint64_t b = 0;
    const int m = static_cast<int>(observed.size());
    for (int j = 0; j < m; ++j)
        if (e >> observed[static_cast<size_t>(j)] & 1)
            b |= std::uint64_t{1} << (m - 1 - j);
    return b;
}

std::string render_class(std::uint64_t b, int n_observed) {
    std::string out(static_cast<size_t>(n_observed), '0');
    for (int j = 0; j < n_observed; ++j)
        if (b >> (n_observed - 1 - j) & 1) out[static_cast<size_t>(j)] = '1';
    return out;
}

ParseError::ParseError(Kind k, int l, int c, const std::string& message)
    : std::runtime_error("line " + std::to_string(l) + ", col " + std::to_string(c) +
                         ": " + message),
      kind(k),
      line(l),
      col(c) {}

namespace {

struct Token {
    std::string text;
    int col;  // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#') break;
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
               line[i] != '#')
            ++i;
        out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
    }
    return out;
}

int parse_qubit(const Token& t, int line, int n_qubits) {
    if (t.text.size() < 2 || t.text[0] != 'q')
        throw ParseError(ParseError::Kind::Syntax, line, t.col,
                         "expected qubit (q<i>), got '" + t.text + "'");
    int idx = -1;
    const char* first = t.text.data() + 1;
    const char* last = t.text.data() + t.text.size();
    auto [p, ec] = std::from_chars(first, last, idx);
    if (ec != std::errc{} || p != last || idx < 0)
        throw ParseError(ParseError::Kind::Syntax, line, t.col,
                         "expected qubit (q<i>), got '" + t.text + "'");
    if (idx >= n_qubits)
        throw ParseError(ParseError::Kind::QubitOutOfRange, line, t.col,
                         "qubit out of range: " + t.text + " with qubits " +
                             std::to_string(n_qubits));
    return idx;
}

double parse_angle(const Token& t, int line) {
    double value = 0.0;
    const char* first = t.text.data();
    const char* last = t.text.data() + t.text.size();
    auto [p, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || p != last)
        throw ParseError(ParseError::Kind::Syntax, line, t.col,
                         "expected angle (radians), got '" + t.text + "'");
    return value;
}

std::string format_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, p);
}

}  // namespace

Circuit parse_circuit(const std::string& text) {
    Circuit c;
    bool have_qubits = false;
    bool have_inputs = false;
    bool have_gates = false;
    bool have_measure = false;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    int last_line = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        auto toks = tokenize(raw);
        if (toks.empty()) continue;
        last_line = line_no;
        const std::string& head = toks[0].text;
        if (have_measure)
            throw ParseError(ParseError::Kind::Syntax, line_no, toks[0].col,
                             "statement after measure");
        if (head == "qubits") {
            if (have_qubits || have_inputs || have_gates)
                throw ParseError(ParseError::Kind::Syntax, line_no, toks[0].col,
                                 "qubits must be the first statement");
            if (toks.size() != 2)
                throw ParseError(ParseError::Kind::Syntax, line_no, toks[0].col,
                                 "usage: qubits <n>");
            int n = 0;
            auto [p, ec] = std::from_chars(toks[1].text.data(),
                                           toks[1].text.data() + toks[1].text.size(), n);
            if (ec != std::errc{} || p != toks[1].text.data() + toks[1].text.size() || n < 1)
                throw ParseError(ParseError::Kind::Syntax, line_no, toks[1].col,
                                 "qubit count must be a positive integer");
            c.n_qubits = n;
            have_qubits = true;
            continue;
        }
        if (!have_qubits)
            throw ParseError(ParseError::Kind::Syntax, line_no, toks[0].col,
                             "qubits must be declared first");
        if (head == "inputs") {
            if (have_inputs || have_gates)
                throw ParseError(ParseError::Kind::Syntax, line_no, toks[0].col,
                                 "inputs must precede gates and appear once");
            if (toks.size() < 2)
                throw ParseError(ParseError::Kind::Syntax, line_no, toks[0].col,
                                 "usage: inputs <name> ...");
            for (size_t i = 1; i < toks.size(); ++i) {
                if (std::find(c.input_vars.begin(), c.input_vars.end(), toks[i].text) !=
                    c.input_vars.end())
                    throw ParseError(ParseError::Kind::Syntax, line_no, toks[i].col,
                                     "duplicate input variable '" + toks[i].text + "'");
                c.input_vars.push_back(toks[i].text);
            }
            have_inputs = true;
            continue;
        }
        if (head == "measure") {
            if (toks.size() < 2)
                throw ParseError(ParseError::Kind::Syntax, line_no, toks[0].col,
                                 "usage: measure <qubit> ...");
            for (size_t i = 1; i < toks.size(); ++i)
                c.observed.push_back(parse_qubit(toks[i], line_no, c.n_qubits));
            have_measure = true;
            continue;
        }
        if (head == "rx" || head == "ry" || head == "rz") {
            if (toks.size() != 3)
                throw ParseError(ParseError::Kind::Syntax, line_no, toks[0].col,
                                 "usage: " + head + " <qubit> $<var>|<angle>");
            GateOp g;
            g.qubit = parse_qubit(toks[1], line_no, c.n_qubits);
            if (toks[2].text[0] == '$') {
                const std::string var = toks[2].text.substr(1);
                if (var.empty())
                    throw ParseError(ParseError::Kind::Syntax, line_no, toks[2].col,
                                     "empty variable name");
                if (std::find(c.input_vars.begin(), c.input_vars.end(), var) ==
                    c.input_vars.end())
                    throw ParseError(ParseError::Kind::UndeclaredVariable, line_no,
                                     toks[2].col, "undeclared variable '" + var + "'");
                g.kind = head == "rx"   ? GateKind::EncRx
                         : head == "ry" ? GateKind::EncRy
                                        : GateKind::EncRz;
                g.angle_var = var;
            } else {
                g.kind = head == "rx"   ? GateKind::ParamRx
                         : head == "ry" ? GateKind::ParamRy
                                        : GateKind::ParamRz;
                g.angle_const = parse_angle(toks[2], line_no);
            }
            c.ops.push_back(std::move(g));
            have_gates = true;
            continue;
        }
        if (head == "cx") {
            if (toks.size() != 3)
                throw ParseError(ParseError::Kind::Syntax, line_no, toks[0].col,
                                 "usage: cx <control> <target>");
            GateOp g;
            g.kind = GateKind::CX;
            g.control = parse_qubit(toks[1], line_no, c.n_qubits);
            g.qubit = parse_qubit(toks[2], line_no, c.n_qubits);
            if (g.control == g.qubit)
                throw ParseError(ParseError::Kind::Syntax, line_no, toks[1].col,
                                 "cx control and target must differ");
            c.ops.push_back(std::move(g));
            have_gates = true;
            continue;
        }
        if (head == "h" || head == "x") {
            if (toks.size() != 2)
                throw ParseError(ParseError::Kind::Syntax, line_no, toks[0].col,
                                 "usage: " + head + " <qubit>");
            GateOp g;
            g.kind = head == "h" ? GateKind::H : GateKind::X;
            g.qubit = parse_qubit(toks[1], line_no, c.n_qubits);
            c.ops.push_back(std::move(g));
            have_gates = true;
            continue;
        }
        throw ParseError(ParseError::Kind::UnknownGate, line_no, toks[0].col,
                         "unknown gate '" + head + "'");
    }
    if (!have_qubits)
        throw ParseError(ParseError::Kind::Syntax, last_line + 1, 1, "missing qubits declaration");
    if (!have_measure)
        throw ParseError(ParseError::Kind::Syntax, last_line + 1, 1, "missing measure statement");
    return c;
}

std::string print_circuit(const Circuit& c) {
    std::ostringstream out;
    out << "qubits " << c.n_qubits << "\n";
    if (!c.input_vars.empty()) {
        out << "inputs";
        for (const auto& v : c.input_vars) out << " " << v;
        out << "\n";
    }
    for (const auto& g : c.ops) {
        out << gate_name(g.kind);
        if (g.kind == GateKind::CX) {
            out << " q" << g.control << " q" << g.qubit << "\n";
        } else if (is_encoding(g.kind)) {
            out << " q" << g.qubit << " $" << g.angle_var << "\n";
        } else if (is_rotation(g.kind)) {
            out << " q" << g.qubit << " " << format_double(g.angle_const) << "\n";
        } else {
            out << " q" << g.qubit << "\n";
        }
    }
    out << "measure";
    for (int q : c.observed) out << " q" << q;
    out << "\n";
    return out.str();
}

std::vector<std::string> validate_circuit(const Circuit& c) {
    std::vector<std::string> diags;
    if (c.n_qubits < 1) diags.push_back("circuit must have at least one qubit");
    {
        std::set<std::string> seen;
        for (const auto& v : c.input_vars)
            if (!seen.insert(v).second) diags.push_back("duplicate input variable '" + v + "'");
    }
    const auto in_range = [&](int q) { return q >= 0 && q < c.n_qubits; };
    for (size_t i = 0; i < c.ops.size(); ++i) {
        const GateOp& g = c.ops[i];
        const std::string where = "op " + std::to_string(i) + " (" + gate_name(g.kind) + ")";
        if (!in_range(g.qubit)) diags.push_back(where + ": qubit out of range");
        if (g.kind == GateKind::CX) {
            if (!in_range(g.control)) diags.push_back(where + ": control out of range");
            if (g.control == g.qubit) diags.push_back(where + ": cx control equals target");
        } else if (g.control != -1) {
            diags.push_back(where + ": control on non-cx gate");
        }
        if (is_encoding(g.kind)) {
            if (g.angle_var.empty()) {
                diags.push_back(where + ": encoding gate missing variable");
            } else if (std::find(c.input_vars.begin(), c.input_vars.end(), g.angle_var) ==
                       c.input_vars.end()) {
                diags.push_back(where + ": undeclared variable '" + g.angle_var + "'");
            }
        } else if (!g.angle_var.empty()) {
            diags.push_back(where + ": angle variable on non-encoding gate");
        }
    }
    if (c.observed.empty()) diags.push_back("no observed qubits");
    std::set<int> seen_q;
    for (int q : c.observed) {
        if (!in_range(q)) diags.push_back("observed qubit out of range");
        if (!seen_q.insert(q).second) diags.push_back("duplicate observed qubit");
    }
    return diags;
}

namespace {

GateOp enc(GateKind k, int q, const std::string& var) {
    GateOp g;
    g.kind = k;
    g.qubit = q;
    g.angle_var = var;
    return g;
}

GateOp rot(GateKind k, int q, double angle) {
    GateOp g;
    g.kind = k;
    g.qubit = q;
    g.angle_const = angle;
    return g;
}

GateOp cx(int control, int target) {
    GateOp g;
    g.kind = GateKind::CX;
    g.control = control;
    g.qubit = target;
    return g;
}

GateOp plain(GateKind k, int q) {
    GateOp g;
    g.kind = k;
    g.qubit = q;
    return g;
}

void check_arity(const char* name, size_t want, size_t got) {
    if (want != got)
        throw std::invalid_argument(std::string(name) + " expects " + std::to_string(want) +
                                    " weights, got " + std::to_string(got));
}

}  // namespace

Circuit build_model(ModelKind kind, const std::vector<double>& w) {
    Circuit c;
    switch (kind) {
        case ModelKind::QCL: {
            check_arity("qcl", 4, w.size());
            c.n_qubits = 4;
            for (int i = 0; i < 4; ++i) c.input_vars.push_back("x" + std::to_string(i));
            for (int i = 0; i < 4; ++i) c.ops.push_back(enc(GateKind::EncRx, i, c.input_vars[static_cast<size_t>(i)]));
            for (int i = 0; i < 4; ++i) c.ops.push_back(cx(i, (i + 1) % 4));
            for (int i = 0; i < 4; ++i) c.ops.push_back(rot(GateKind::ParamRy, i, w[static_cast<size_t>(i)]));
            c.observed = {0};
            break;
        }
        case ModelKind::CCQC: {
            check_arity("ccqc", 36, w.size());
            c.n_qubits = 2;
            for (int i = 0; i < 5; ++i) c.input_vars.push_back("x" + std::to_string(i));
            c.ops.push_back(enc(GateKind::EncRy, 0, "x0"));
            c.ops.push_back(cx(0, 1));
            c.ops.push_back(enc(GateKind::EncRy, 1, "x1"));
            c.ops.push_back(cx(0, 1));
            c.ops.push_back(plain(GateKind::X, 0));
            c.ops.push_back(enc(GateKind::EncRy, 1, "x2"));
            c.ops.push_back(cx(0, 1));
            c.ops.push_back(enc(GateKind::EncRy, 1, "x3"));
            c.ops.push_back(cx(0, 1));
            c.ops.push_back(plain(GateKind::X, 0));
            c.ops.push_back(enc(GateKind::EncRy, 1, "x4"));
            for (int k = 0; k < 6; ++k) {
                const size_t b = static_cast<size_t>(6 * k);
                c.ops.push_back(rot(GateKind::ParamRx, 0, w[b + 0]));
                c.ops.push_back(rot(GateKind::ParamRy, 0, w[b + 1]));
                c.ops.push_back(rot(GateKind::ParamRz, 0, w[b + 2]));
                c.ops.push_back(rot(GateKind::ParamRx, 1, w[b + 3]));
                c.ops.push_back(rot(GateKind::ParamRy, 1, w[b + 4]));
                c.ops.push_back(rot(GateKind::ParamRz, 1, w[b + 5]));
                c.ops.push_back(cx(0, 1));
            }
            c.observed = {0};
            break;
        }
        case ModelKind::PV: {
            check_arity("pv", 8, w.size());
            c.n_qubits = 4;
            for (int i = 0; i < 16; ++i) c.input_vars.push_back("x" + std::to_string(i));
            for (int i = 0; i < 4; ++i) c.ops.push_back(plain(GateKind::H, i));
            for (int i = 0; i < 4; ++i) c.ops.push_back(enc(GateKind::EncRx, i, c.input_vars[static_cast<size_t>(i)]));
            for (int i = 0; i < 4; ++i) c.ops.push_back(enc(GateKind::EncRz, i, c.input_vars[static_cast<size_t>(i + 4)]));
            for (int i = 0; i < 4; ++i) c.ops.push_back(enc(GateKind::EncRx, i, c.input_vars[static_cast<size_t>(i + 8)]));
            for (int i = 0; i < 4; ++i) c.ops.push_back(enc(GateKind::EncRz, i, c.input_vars[static_cast<size_t>(i + 12)]));
            for (int i = 0; i < 4; ++i) c.ops.push_back(rot(GateKind::ParamRy, i, w[static_cast<size_t>(i)]));
            c.ops.push_back(cx(3, 0));
            c.ops.push_back(cx(0, 1));
            c.ops.push_back(cx(1, 2));
            c.ops.push_back(cx(2, 3));
            for (int i = 0; i < 4; ++i) c.ops.push_back(rot(GateKind::ParamRy, i, w[static_cast<size_t>(i + 4)]));
            c.ops.push_back(cx(0, 1));
            c.ops.push_back(cx(1, 2));
            c.ops.push_back(cx(2, 3));
            c.ops.push_back(cx(3, 0));
            c.observed = {0};
            break;
        }
    }
    return c;
}

}  // namespace vqc
