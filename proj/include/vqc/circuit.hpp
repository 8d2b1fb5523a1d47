#ifndef VQC_CIRCUIT_HPP
#define VQC_CIRCUIT_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace vqc {

// Encoding gates rotate by an input variable's value, parametric gates by a
// trained constant. CX/H/X are constant gates handled with the parametric
// ones everywhere downstream.
enum class GateKind { EncRx, EncRy, EncRz, ParamRx, ParamRy, ParamRz, CX, H, X };

bool is_encoding(GateKind k);
bool is_rotation(GateKind k);
const char* gate_name(GateKind k);

struct GateOp {
    GateKind kind;
    int qubit = 0;          // target
    int control = -1;       // CX only
    std::string angle_var;  // encoding kinds only
    double angle_const = 0.0;  // parametric rotation kinds only
};

struct Circuit {
    int n_qubits = 0;
    std::vector<std::string> input_vars;
    std::vector<GateOp> ops;
    std::vector<int> observed;
};

// Basis labels: bit i of the index is the state of qubit i, so the textual
// rendering reads q_{n-1} ... q_0 left to right ("01" means q1=0, q0=1).
std::string render_basis(std::uint64_t value, int n_qubits);
std::uint64_t parse_basis(const std::string& bits);

// Bits of basis e at the observed positions, in tuple order: observed[0]
// becomes the most significant bit of the class label.
std::uint64_t class_of_basis(std::uint64_t e, const std::vector<int>& observed);
std::string render_class(std::uint64_t b, int n_observed);

struct ParseError : std::runtime_error {
    enum class Kind { Syntax, UnknownGate, UndeclaredVariable, QubitOutOfRange };
    ParseError(Kind kind, int line, int col, const std::string& message);
    Kind kind;
    int line;
    int col;
};

// Line-oriented DSL:
//   qubits <n>
//   inputs <name> ...
//   rx|ry|rz <qubit> $<var>     encoding rotation
//   rx|ry|rz <qubit> <float>    parametric rotation
//   cx <control> <target>
//   h <qubit> | x <qubit>
//   measure <qubit> ...
// Qubits are written q<i>; '#' starts a comment.
Circuit parse_circuit(const std::string& text);
std::string print_circuit(const Circuit& c);

// Empty result iff all Circuit invariants hold; one diagnostic per violation.
std::vector<std::string> validate_circuit(const Circuit& c);

enum class ModelKind { QCL, CCQC, PV };

// The three benchmark ansatz layouts, parameterized by their trained
// weights (QCL: 4, CCQC: 36, PV: 8). R3 blocks expand to Rx;Ry;Rz.
Circuit build_model(ModelKind kind, const std::vector<double>& weights);

}  // namespace vqc

#endif
