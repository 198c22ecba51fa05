// Compares the OpenMP kernels against their serial reference implementations
// and reports timings plus an equality check.

#include <chrono>
#include <cstdio>
#include <random>
#include <string_view>

#include "qhqm/kernels.hpp"
#include "qhqm/symmetry.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

qhqm::ComplexMatrix random_matrix(std::size_t n, std::mt19937& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    qhqm::ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = qhqm::Complex(dist(rng), dist(rng));
    return m;
}

void report(const char* name, double serial_ms, double parallel_ms, bool match) {
    std::printf("%-28s %10.2f ms %10.2f ms %8.2fx   %s\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms, match ? "match" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
    std::size_t matmul_n = 256;
    std::size_t assembly_n = 24;
    int scan_grid = 200000;
    if (argc > 1 && std::string_view(argv[1]) == "--quick") {
        matmul_n = 128;
        assembly_n = 12;
        scan_grid = 20000;
    }

    std::mt19937 rng(20240817);
    std::printf("threads available: %d\n", qhqm::kernels::max_threads());
    std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

    {
        const auto a = random_matrix(matmul_n, rng);
        const auto b = random_matrix(matmul_n, rng);
        auto t0 = Clock::now();
        const auto ref = qhqm::kernels::serial::matmul(a, b);
        const double ts = ms_since(t0);
        t0 = Clock::now();
        const auto par = qhqm::kernels::matmul(a, b);
        const double tp = ms_since(t0);
        char label[64];
        std::snprintf(label, sizeof label, "matmul %zux%zu", matmul_n, matmul_n);
        report(label, ts, tp, ref == par);
    }

    {
        const auto h = random_matrix(assembly_n, rng);
        auto t0 = Clock::now();
        const auto ref = qhqm::kernels::serial::intertwining_matrix(h);
        const double ts = ms_since(t0);
        t0 = Clock::now();
        const auto par = qhqm::kernels::intertwining_matrix(h);
        const double tp = ms_since(t0);
        char label[64];
        std::snprintf(label, sizeof label, "intertwining assembly n=%zu", assembly_n);
        report(label, ts, tp, ref.data == par.data);
    }

    {
        const double alpha = 1.0471975511965976;
        auto t0 = Clock::now();
        const auto ref = qhqm::serial::charge_nonexistence_scan(alpha, scan_grid);
        const double ts = ms_since(t0);
        t0 = Clock::now();
        const auto par = qhqm::charge_nonexistence_scan(alpha, scan_grid);
        const double tp = ms_since(t0);
        char label[64];
        std::snprintf(label, sizeof label, "charge scan grid=%d", scan_grid);
        report(label, ts, tp,
               ref.min_residual == par.min_residual && ref.witness_xi == par.witness_xi);
    }
    return 0;
}
