#ifndef VQC_CONCRETE_HPP
#define VQC_CONCRETE_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "vqc/circuit.hpp"

namespace vqc {

using Amplitude = std::complex<double>;
using Environment = std::map<std::string, double>;

// Dense state vector; amps[e] is the amplitude of basis e (qubit i = bit i).
struct QuantumState {
    int n_qubits = 0;
    std::vector<Amplitude> amps;
};

struct Distribution {
    std::vector<double> probs;
};

QuantumState init_state(int n_qubits);

// 2x2 for single-qubit gates, 4x4 basis permutation for CX. Row-major;
// for CX the 2-bit index is (control<<1)|target.
struct GateUnitary {
    int arity = 1;
    std::array<Amplitude, 4> u2{};
    std::array<Amplitude, 16> u4{};
};

std::array<Amplitude, 4> rx_matrix(double theta);
std::array<Amplitude, 4> ry_matrix(double theta);
std::array<Amplitude, 4> rz_matrix(double theta);
std::array<Amplitude, 4> h_matrix();
std::array<Amplitude, 4> x_matrix();

// Encoding gates take their angle from env; throws std::out_of_range when
// the variable is unbound.
GateUnitary gate_unitary(const GateOp& g, const Environment& env);

// Strided in-place update, O(2^n) per single-qubit gate. Observationally
// equal to multiplying by the lifted 2^n x 2^n matrix (the test oracle).
void apply_gate(QuantumState& s, const GateOp& g, const Environment& env);

Distribution measure(const QuantumState& s);

// argmax class over aggregated probabilities; ties resolved to the smallest
// label as an unsigned integer.
std::uint64_t classify(const Distribution& d, const std::vector<int>& observed);
double class_probability(const Distribution& d, const std::vector<int>& observed,
                         std::uint64_t cls);

struct ConcreteResult {
    Distribution dist;
    std::uint64_t cls = 0;
    double prob = 0.0;
};

ConcreteResult run_concrete(const Circuit& c, const Environment& env);

}  // namespace vqc

#endif
