#include "vsheet/trig.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace vsheet {

namespace {
const double TWO_PI = 2.0 * M_PI;

bool power_of_two(std::size_t m) { return m > 0 && (m & (m - 1)) == 0; }

void check_nyquist(std::size_t N, std::size_t M, const char* who) {
    if (2 * N > M)
        throw std::invalid_argument(std::string(who) + ": truncation " + std::to_string(N) +
                                    " exceeds Nyquist for M=" + std::to_string(M));
}
}  // namespace

double EvenSeries::operator()(double x) const {
    double s = 0;
    for (std::size_t j = c.size(); j-- > 0;) s += c[j] * std::cos((double)(j + 1) * x);
    return s;
}

double OddSeries::operator()(double x) const {
    double s = 0;
    for (std::size_t j = c.size(); j-- > 0;) s += c[j] * std::sin((double)(j + 1) * x);
    return s;
}

Grid::Grid(std::size_t m, bool stag) : M(m), staggered(stag) {
    if (M < 4) throw std::invalid_argument("Grid: need M >= 4");
    if (!power_of_two(M)) throw std::invalid_argument("Grid: M must be a power of two");
}

double Grid::node(std::size_t i) const {
    return TWO_PI * (double)i / (double)M + (staggered ? M_PI / (double)M : 0.0);
}

std::vector<double> Grid::nodes() const {
    std::vector<double> x(M);
    for (std::size_t i = 0; i < M; ++i) x[i] = node(i);
    return x;
}

std::vector<double> synth(const EvenSeries& s, const Grid& g) {
    check_nyquist(s.modes(), g.M, "synth");
    std::vector<double> v(g.M, 0.0);
    for (std::size_t i = 0; i < g.M; ++i) v[i] = s(g.node(i));
    return v;
}

std::vector<double> synth(const OddSeries& s, const Grid& g) {
    check_nyquist(s.modes(), g.M, "synth");
    std::vector<double> v(g.M, 0.0);
    for (std::size_t i = 0; i < g.M; ++i) v[i] = s(g.node(i));
    return v;
}

EvenAnalysis analyze_even(const std::vector<double>& values, std::size_t N) {
    const std::size_t M = values.size();
    check_nyquist(N, M, "analyze_even");
    EvenAnalysis out{EvenSeries(N), 0.0};
    double mean = 0;
    for (double v : values) mean += v;
    out.mean = mean / (double)M;
    for (std::size_t j = 1; j <= N; ++j) {
        double a = 0;
        for (std::size_t i = 0; i < M; ++i)
            a += values[i] * std::cos((double)j * TWO_PI * (double)i / (double)M);
        out.series.c[j - 1] = 2.0 * a / (double)M;
    }
    return out;
}

OddSeries analyze_odd(const std::vector<double>& values, std::size_t N) {
    const std::size_t M = values.size();
    check_nyquist(N, M, "analyze_odd");
    OddSeries s(N);
    for (std::size_t j = 1; j <= N; ++j) {
        double a = 0;
        for (std::size_t i = 0; i < M; ++i)
            a += values[i] * std::sin((double)j * TWO_PI * (double)i / (double)M);
        s.c[j - 1] = 2.0 * a / (double)M;
    }
    return s;
}

OddSeries differentiate(const EvenSeries& s) {
    OddSeries d(s.modes());
    for (std::size_t j = 1; j <= s.modes(); ++j) d.c[j - 1] = -(double)j * s.c[j - 1];
    return d;
}

EvenSeries differentiate(const OddSeries& s) {
    EvenSeries d(s.modes());
    for (std::size_t j = 1; j <= s.modes(); ++j) d.c[j - 1] = (double)j * s.c[j - 1];
    return d;
}

double weighted_norm(const std::vector<double>& coeffs, int k, double a) {
    if (k < 0) throw std::invalid_argument("weighted_norm: k < 0");
    if (a < 0) throw std::invalid_argument("weighted_norm: strip width < 0");
    double s = 0;
    for (std::size_t j = 1; j <= coeffs.size(); ++j) {
        double w = (1.0 + std::pow((double)j, 2.0 * k)) * std::cosh(2.0 * a * (double)j);
        s += w * coeffs[j - 1] * coeffs[j - 1];
    }
    if (!std::isfinite(s)) throw std::runtime_error("weighted_norm: overflow, strip too wide");
    return std::sqrt(s);
}

double weighted_norm(const EvenSeries& s, int k, double a) { return weighted_norm(s.c, k, a); }
double weighted_norm(const OddSeries& s, int k, double a) { return weighted_norm(s.c, k, a); }

}  // namespace vsheet
