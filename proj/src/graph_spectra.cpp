#include "walkzeta/graph_spectra.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>

namespace walkzeta {

namespace {

constexpr int kDimensionCap = 64;
constexpr std::size_t kCsvDimensionCap = 4096;

// largest flat index the CSV loader will materialize: n x n doubles at
// n = 4096 is already 128 MB, the upper end of desk scale

void validate_entries(std::size_t n, const std::vector<double>& entries) {
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double v = entries[i * n + j];
            if (!std::isfinite(v) || v < 0.0) {
                throw std::invalid_argument("transition entry (" + std::to_string(i) + ", " +
                                            std::to_string(j) + ") = " + std::to_string(v) +
                                            " is not a finite nonnegative probability");
            }
        }
    }
    // column sums must be 1; report the worst offender by index
    std::size_t worst_col = 0;
    double worst_dev = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) sum += entries[i * n + j];
        const double dev = std::abs(sum - 1.0);
        if (dev > worst_dev) {
            worst_dev = dev;
            worst_col = j;
        }
    }
    if (worst_dev > kColumnSumTol) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3e", worst_dev);
        throw std::invalid_argument("matrix is not column-stochastic: column " +
                                    std::to_string(worst_col) + " deviates from unit sum by " + buf);
    }
}

bool detect_symmetric(std::size_t n, const std::vector<double>& entries) {
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(entries[i * n + j] - entries[j * n + i]) > kSymmetryTol) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// cyclic Jacobi

double off_diagonal_norm(const std::vector<double>& a, std::size_t n) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) sum += 2.0 * a[i * n + j] * a[i * n + j];
    }
    return std::sqrt(sum);
}

void jacobi_rotate(std::vector<double>& a, std::vector<double>& v, std::size_t n, std::size_t p,
                   std::size_t q) {
    const double apq = a[p * n + q];
    if (apq == 0.0) return;
    const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::hypot(theta, 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;
    const double tau = s / (1.0 + c);

    a[p * n + p] -= t * apq;
    a[q * n + q] += t * apq;
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == p || i == q) continue;
        const double aip = a[i * n + p];
        const double aiq = a[i * n + q];
        a[i * n + p] = aip - s * (aiq + tau * aip);
        a[i * n + q] = aiq + s * (aip - tau * aiq);
        a[p * n + i] = a[i * n + p];
        a[q * n + i] = a[i * n + q];
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double vip = v[i * n + p];
        const double viq = v[i * n + q];
        v[i * n + p] = vip - s * (viq + tau * vip);
        v[i * n + q] = viq + s * (vip - tau * viq);
    }
}

EigenSystem jacobi_eigensystem(const TransitionMatrix& p) {
    if (!p.is_symmetric()) {
        throw SymmetryError("eigendecomposition requires a symmetric transition matrix");
    }
    const std::size_t n = p.size();
    std::vector<double> a = p.entries();
    std::vector<double> v(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

    double fro = 0.0;
    for (double x : a) fro += x * x;
    fro = std::sqrt(fro);
    const double threshold = 1e-14 * fro;

    bool converged = false;
    for (int sweep = 0; sweep < 50; ++sweep) {
        if (off_diagonal_norm(a, n) <= threshold) {
            converged = true;
            break;
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) jacobi_rotate(a, v, n, i, j);
        }
    }
    if (!converged && off_diagonal_norm(a, n) > threshold) {
        throw std::runtime_error("Jacobi iteration did not converge within 50 sweeps");
    }

    // sort eigenpairs by eigenvalue, descending; ties keep diagonal order
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a[x * n + x] > a[y * n + y]; });

    EigenSystem es;
    es.n = n;
    es.values.resize(n);
    es.vectors.resize(n * n);
    for (std::size_t j = 0; j < n; ++j) {
        es.values[j] = a[order[j] * n + order[j]];
        for (std::size_t i = 0; i < n; ++i) es.vectors[i * n + j] = v[i * n + order[j]];
    }
    return es;
}

// ---------------------------------------------------------------------------
// CSV plumbing

[[noreturn]] void parse_fail(const std::string& what) { throw ParseError("matrix CSV: " + what); }

double parse_field(const std::string& field, std::size_t row, std::size_t col) {
    const char* begin = field.data();
    const char* end = begin + field.size();
    while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
    while (end > begin && (end[-1] == ' ' || end[-1] == '\t' || end[-1] == '\r')) --end;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end || begin == end) {
        parse_fail("row " + std::to_string(row) + ", entry " + std::to_string(col) +
                   " is not a number: '" + field + "'");
    }
    return value;
}

}  // namespace

// ---------------------------------------------------------------------------

TransitionMatrix::TransitionMatrix(std::size_t n, std::vector<double> entries)
    : n_(n), entries_(std::move(entries)) {
    if (n_ == 0) throw SizeError("transition matrix must be at least 1 x 1");
    if (entries_.size() != n_ * n_) {
        throw SizeError("transition matrix data has " + std::to_string(entries_.size()) +
                        " entries, expected " + std::to_string(n_ * n_));
    }
    validate_entries(n_, entries_);
    symmetric_ = detect_symmetric(n_, entries_);
}

TorusSpec::TorusSpec(int dimension, long long N) : d(dimension), side(N) {
    if (d < 1 || d > kDimensionCap) {
        throw SizeError("torus dimension must lie in [1, " + std::to_string(kDimensionCap) + "]");
    }
    if (side < 1) throw SizeError("torus side length must be at least 1");
    count_ = 1;
    const auto n = static_cast<unsigned long long>(side);
    for (int j = 0; j < d; ++j) {
        if (count_ > kTorusSpectrumCap / n) {
            throw SizeError("torus vertex count N^d exceeds the spectrum cap 2^28");
        }
        count_ *= n;
    }
    if (count_ > kTorusSpectrumCap) {
        throw SizeError("torus vertex count N^d exceeds the spectrum cap 2^28");
    }
}

MomentumIndex momentum_index(const TorusSpec& spec, unsigned long long flat) {
    if (flat >= spec.vertex_count()) {
        throw SizeError("flat momentum index " + std::to_string(flat) + " out of range for N^d = " +
                        std::to_string(spec.vertex_count()));
    }
    MomentumIndex m;
    m.k.resize(spec.d);
    m.angle.resize(spec.d);
    const auto n = static_cast<unsigned long long>(spec.side);
    for (int j = spec.d - 1; j >= 0; --j) {
        m.k[j] = static_cast<long long>(flat % n);
        flat /= n;
    }
    for (int j = 0; j < spec.d; ++j) {
        m.angle[j] = 2.0 * std::numbers::pi * static_cast<double>(m.k[j]) / static_cast<double>(spec.side);
    }
    return m;
}

Spectrum::Spectrum(std::vector<std::complex<double>> values) : values_(std::move(values)) {
    if (values_.empty()) throw SizeError("spectrum must hold at least one eigenvalue");
    std::sort(values_.begin(), values_.end(), [](std::complex<double> a, std::complex<double> b) {
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    });
}

Spectrum Spectrum::from_real(std::vector<double> values) {
    std::vector<std::complex<double>> v;
    v.reserve(values.size());
    for (double x : values) v.emplace_back(x, 0.0);
    return Spectrum(std::move(v));
}

Spectrum Spectrum::from_complex(std::vector<std::complex<double>> values) {
    return Spectrum(std::move(values));
}

double Spectrum::max_modulus() const {
    double m = 0.0;
    for (auto v : values_) m = std::max(m, std::abs(v));
    return m;
}

double cosine_sum(std::span<const double> angles) {
    if (angles.empty()) throw SizeError("cosine_sum needs at least one angle");
    double sum = 0.0;
    for (double w : angles) sum += std::cos(w);
    return sum;
}

TransitionMatrix build_torus_transition(const TorusSpec& spec) {
    const unsigned long long count = spec.vertex_count();
    if (count > kTorusMatrixCap) {
        throw SizeError("torus vertex count " + std::to_string(count) +
                        " exceeds the dense-matrix cap 2^20; use the spectrum path");
    }
    const auto n = static_cast<std::size_t>(count);
    std::vector<double> entries(n * n, 0.0);
    const double hop = 1.0 / (2.0 * spec.d);
    const auto side = static_cast<std::size_t>(spec.side);

    // odometer over the coordinates of x, last axis fastest; strides[j] is
    // the flat-index step of axis j
    std::vector<std::size_t> digit(spec.d, 0);
    std::vector<std::size_t> stride(spec.d, 1);
    for (int j = spec.d - 2; j >= 0; --j) stride[j] = stride[j + 1] * side;

    for (std::size_t x = 0; x < n; ++x) {
        for (int j = 0; j < spec.d; ++j) {
            const std::size_t up = (digit[j] + 1 == side) ? 0 : digit[j] + 1;
            const std::size_t down = (digit[j] == 0) ? side - 1 : digit[j] - 1;
            entries[x * n + (x - digit[j] * stride[j] + up * stride[j])] += hop;
            entries[x * n + (x - digit[j] * stride[j] + down * stride[j])] += hop;
        }
        for (int j = spec.d - 1; j >= 0; --j) {
            if (++digit[j] < side) break;
            digit[j] = 0;
        }
    }
    return TransitionMatrix(n, std::move(entries));
}

std::vector<double> torus_spectrum_row_major(const TorusSpec& spec) {
    const unsigned long long count = spec.vertex_count();
    const auto side = static_cast<std::size_t>(spec.side);
    std::vector<double> cos_table(side);
    for (std::size_t k = 0; k < side; ++k) {
        cos_table[k] = std::cos(2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(side));
    }
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(count));
    std::vector<std::size_t> digit(spec.d, 0);
    for (unsigned long long flat = 0; flat < count; ++flat) {
        // fresh d-term sum per point: no drift carried around the odometer
        double s = 0.0;
        for (int j = 0; j < spec.d; ++j) s += cos_table[digit[j]];
        values.push_back(s / spec.d);
        for (int j = spec.d - 1; j >= 0; --j) {
            if (++digit[j] < side) break;
            digit[j] = 0;
        }
    }
    return values;
}

Spectrum torus_spectrum(const TorusSpec& spec) {
    return Spectrum::from_real(torus_spectrum_row_major(spec));
}

Spectrum hermitian_eigenvalues(const TransitionMatrix& p) {
    return Spectrum::from_real(jacobi_eigensystem(p).values);
}

EigenSystem hermitian_eigensystem(const TransitionMatrix& p) { return jacobi_eigensystem(p); }

TransitionMatrix load_transition_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) parse_fail("empty input, expected the dimension n on line 1");
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    unsigned long long n = 0;
    {
        const char* begin = line.data();
        const char* end = begin + line.size();
        const auto [ptr, ec] = std::from_chars(begin, end, n);
        if (ec != std::errc{} || ptr != end || begin == end) {
            parse_fail("line 1 must be the dimension n, got '" + line + "'");
        }
    }
    if (n == 0) parse_fail("dimension must be at least 1");
    if (n > kCsvDimensionCap) {
        parse_fail("dimension " + std::to_string(n) + " exceeds the loader cap " +
                   std::to_string(kCsvDimensionCap));
    }
    const auto dim = static_cast<std::size_t>(n);
    std::vector<double> entries;
    entries.reserve(dim * dim);
    for (std::size_t row = 0; row < dim; ++row) {
        if (!std::getline(in, line)) {
            parse_fail("expected " + std::to_string(dim) + " rows, input ended at row " +
                       std::to_string(row));
        }
        std::size_t col = 0;
        std::size_t begin = 0;
        while (true) {
            const std::size_t comma = line.find(',', begin);
            const std::string field = line.substr(begin, comma == std::string::npos ? std::string::npos
                                                                                    : comma - begin);
            if (col >= dim) parse_fail("row " + std::to_string(row) + " has more than " +
                                       std::to_string(dim) + " entries");
            entries.push_back(parse_field(field, row, col));
            ++col;
            if (comma == std::string::npos) break;
            begin = comma + 1;
        }
        if (col != dim) {
            parse_fail("row " + std::to_string(row) + " has " + std::to_string(col) +
                       " entries, expected " + std::to_string(dim));
        }
    }
    return TransitionMatrix(dim, std::move(entries));
}

TransitionMatrix load_transition_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open matrix file '" + path + "'");
    return load_transition_csv(in);
}

void save_transition_csv(const TransitionMatrix& p, std::ostream& out) {
    const std::size_t n = p.size();
    out << n << '\n';
    char buf[32];
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            std::snprintf(buf, sizeof buf, "%.16e", p(i, j));
            out << buf << (j + 1 == n ? '\n' : ',');
        }
    }
}

}  // namespace walkzeta
