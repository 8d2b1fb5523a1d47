// Compares the serial and OpenMP paths of the two parallel surfaces: the
// level-synchronous refinement worklist and the soundness-probe sample loop.
// Both paths must produce identical results; the table reports wall times.
//
// Usage: bench_refine [verify_repeats] [probe_samples]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "vqc/verifier.hpp"

using namespace vqc;
using clock_type = std::chrono::steady_clock;

namespace {

constexpr const char* kCircuitText =
    "qubits 2\n"
    "inputs x0 x1\n"
    "rx q0 $x0\n"
    "rx q1 $x1\n"
    "ry q0 0.99\n"
    "ry q1 -0.5\n"
    "cx q0 q1\n"
    "ry q0 3.27\n"
    "ry q1 -0.69\n"
    "measure q0\n";

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

void print_row(const char* name, double serial_s, double parallel_s) {
    std::printf("%-28s %10.3f s %10.3f s %9.2fx\n", name, serial_s, parallel_s,
                parallel_s > 0.0 ? serial_s / parallel_s : 0.0);
}

int bench_verify(const Circuit& c, int repeats) {
    VerificationProblem p;
    p.circuit = c;
    p.center = {{"x0", 6.0}, {"x1", 2.7}};
    p.eps = 1.1;
    p.observed = c.observed;
    p.config.max_depth = 14;

    double times[2] = {0.0, 0.0};
    Verdict got[2];
    for (int par = 0; par < 2; ++par) {
        p.config.parallel = par == 1;
        const auto t0 = clock_type::now();
        for (int i = 0; i < repeats; ++i) got[par] = verify_robust(p);
        times[par] = seconds_since(t0);
    }
    print_row("refinement worklist", times[0], times[1]);

    if (got[0].status != got[1].status || got[0].regions_explored != got[1].regions_explored ||
        got[0].max_depth_reached != got[1].max_depth_reached) {
        std::printf("MISMATCH: serial %s/%lld/%d vs parallel %s/%lld/%d\n",
                    status_name(got[0].status),
                    static_cast<long long>(got[0].regions_explored), got[0].max_depth_reached,
                    status_name(got[1].status),
                    static_cast<long long>(got[1].regions_explored), got[1].max_depth_reached);
        return 1;
    }
    std::printf("  verdict %s, %lld regions, depth %d (%d runs, identical on both paths)\n",
                status_name(got[0].status), static_cast<long long>(got[0].regions_explored),
                got[0].max_depth_reached, repeats);
    return 0;
}

int bench_probe(const Circuit& c, int samples) {
    const AbstractEnvironment box = ball_env({{"x0", 6.0}, {"x1", 2.7}}, 0.8);

    double times[2] = {0.0, 0.0};
    ProbeReport got[2];
    for (int par = 0; par < 2; ++par) {
        const auto t0 = clock_type::now();
        got[par] = soundness_probe(c, box, samples, par == 1);
        times[par] = seconds_since(t0);
    }
    print_row("soundness-probe samples", times[0], times[1]);

    if (got[0].violations != got[1].violations) {
        std::printf("MISMATCH: serial %lld violations vs parallel %lld\n",
                    static_cast<long long>(got[0].violations),
                    static_cast<long long>(got[1].violations));
        return 1;
    }
    std::printf("  %d samples, %lld violations (identical on both paths)\n", samples,
                static_cast<long long>(got[0].violations));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    const int verify_repeats = argc > 1 ? std::atoi(argv[1]) : 200;
    const int probe_samples = argc > 2 ? std::atoi(argv[2]) : 200000;
    if (verify_repeats < 1 || probe_samples < 1) {
        std::fprintf(stderr, "usage: %s [verify_repeats >= 1] [probe_samples >= 1]\n",
                     argv[0]);
        return 2;
    }

    const Circuit c = parse_circuit(kCircuitText);
    std::printf("%-28s %12s %12s %10s\n", "workload", "serial", "parallel", "speedup");
    int rc = 0;
    rc += bench_verify(c, verify_repeats);
    rc += bench_probe(c, probe_samples);
    return rc;
}
