#pragma once
#include <cstddef>
#include <vector>

namespace vsheet {

// Cosine series sum_{j>=1} c[j-1] cos(jx). There is no constant term; the
// mean of a sampled field is carried out of band where it matters.
struct EvenSeries {
    std::vector<double> c;
    EvenSeries() = default;
    explicit EvenSeries(std::size_t n) : c(n, 0.0) {}
    explicit EvenSeries(std::vector<double> v) : c(std::move(v)) {}
    std::size_t modes() const { return c.size(); }
    double operator()(double x) const;   // pointwise sum
};

// Sine series sum_{j>=1} c[j-1] sin(jx).
struct OddSeries {
    std::vector<double> c;
    OddSeries() = default;
    explicit OddSeries(std::size_t n) : c(n, 0.0) {}
    explicit OddSeries(std::vector<double> v) : c(std::move(v)) {}
    std::size_t modes() const { return c.size(); }
    double operator()(double x) const;
};

// Uniform periodic grid on [0, 2pi): x_i = 2 pi i / M, shifted to the
// midpoints x_i + pi/M when staggered. Staggered grids host the inner
// integration variable so singular kernels are never hit at zero offset.
struct Grid {
    std::size_t M;
    bool staggered;
    explicit Grid(std::size_t m, bool stag = false);
    double node(std::size_t i) const;
    std::vector<double> nodes() const;
};

std::vector<double> synth(const EvenSeries& s, const Grid& g);
std::vector<double> synth(const OddSeries& s, const Grid& g);

struct EvenAnalysis {
    EvenSeries series;
    double mean;     // j = 0 content, reported but never stored in the series
};

// Coefficients from plain-grid samples: (2/M) sum_i v_i cos(j x_i) (resp. sin).
EvenAnalysis analyze_even(const std::vector<double>& values, std::size_t N);
OddSeries analyze_odd(const std::vector<double>& values, std::size_t N);

OddSeries differentiate(const EvenSeries& s);    // cos(jx) -> -j sin(jx)
EvenSeries differentiate(const OddSeries& s);    // sin(jx) ->  j cos(jx)

// sqrt(sum_j (1 + j^{2k}) cosh(2 a j) c_j^2). The strip parameter a is a
// decay diagnostic only; a = 0 gives a Sobolev-type weight.
double weighted_norm(const std::vector<double>& coeffs, int k, double a);
double weighted_norm(const EvenSeries& s, int k, double a);
double weighted_norm(const OddSeries& s, int k, double a);

}  // namespace vsheet
