#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace lin3b {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

inline double dot(const Vec3& x, const Vec3& y) {
    return x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
}

inline Vec3 matvec(const Mat3& A, const Vec3& x) {
    Vec3 r{};
    for (int i = 0; i < 3; ++i)
        r[i] = A[i][0] * x[0] + A[i][1] * x[1] + A[i][2] * x[2];
    return r;
}

inline Mat3 matmul(const Mat3& A, const Mat3& B) {
    Mat3 C{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0;
            for (int k = 0; k < 3; ++k) s += A[i][k] * B[k][j];
            C[i][j] = s;
        }
    return C;
}

inline Mat3 transpose(const Mat3& A) {
    Mat3 T{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) T[i][j] = A[j][i];
    return T;
}

// Error raised when a numerical analysis step (root bracketing, eigenvalue
// classification, ...) cannot produce a trustworthy answer.
struct analysis_error : std::runtime_error {
    explicit analysis_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Error raised when an iterative refinement fails to converge.
struct convergence_error : std::runtime_error {
    explicit convergence_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// splitmix64: used to derive independent per-task RNG seeds from a master seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t task_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t s = master ^ (0x100000001b3ULL * (index + 1));
    std::uint64_t a = splitmix64(s);
    std::uint64_t b = splitmix64(s);
    return a ^ (b << 1);
}

}  // namespace lin3b
