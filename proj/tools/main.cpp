// Command-line front end: eigenvalue listings, zeta sweeps, coefficient
// tables, lattice walk distributions, and the self-check battery.
//
// Output is a CSV table (default) or a JSON document with a "schema_version"
// field; every floating-point field is printed as %.16e, rows are emitted in
// config order, and nothing depends on run-to-run state, so identical
// invocations produce byte-identical output. Complex quantities serialize as
// separate _re/_im columns in CSV and two-element arrays in JSON.
//
// A failing sweep row (for example a u outside the convergence disk) keeps
// its input columns, leaves the value columns empty, and carries the error
// message in the trailing column; later rows still run. Exit codes: 0 clean,
// 1 if any row errored (or a computation failed before the table started),
// 2 for usage mistakes.

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "walkzeta/errors.hpp"
#include "walkzeta/graph_spectra.hpp"
#include "walkzeta/lattice_walks.hpp"
#include "walkzeta/linalg_complex.hpp"
#include "walkzeta/verification.hpp"
#include "walkzeta/zeta_engine.hpp"

namespace {

using cd = std::complex<double>;

using walkzeta::ComplexMatrix;
using walkzeta::EvolutionParams;
using walkzeta::Kernel;
using walkzeta::Spectrum;
using walkzeta::TorusSpec;
using walkzeta::TransitionMatrix;

// cross-check determinants are only computed when the dense matrix stays
// this small; larger sweeps still get the spectral value
constexpr unsigned long long kDetCheckCap = 512;

constexpr long long kWalkWindowPad = 40;

// command-line mistakes CLI11 cannot see (bad tokens, wrong flag
// combinations); mapped to exit code 2
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

// ---------------------------------------------------------------------------
// output tables

enum class ColKind { integer, real, cplx, text };

struct Column {
    std::string name;
    ColKind kind;
};

// one table cell; `present` is false for the empty fields of error rows
struct Cell {
    bool present = false;
    long long i = 0;
    double d = 0.0;
    cd z{0.0, 0.0};
    std::string s;
};

Cell cell_empty() { return {}; }

Cell cell_int(long long v) {
    Cell c;
    c.present = true;
    c.i = v;
    return c;
}

Cell cell_real(double v) {
    Cell c;
    c.present = true;
    c.d = v;
    return c;
}

Cell cell_cplx(cd v) {
    Cell c;
    c.present = true;
    c.z = v;
    return c;
}

Cell cell_text(std::string v) {
    Cell c;
    c.present = true;
    c.s = std::move(v);
    return c;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char ch : s) {
        if (ch == '"') quoted += "\"\"";
        else quoted += ch;
    }
    quoted += '"';
    return quoted;
}

class Table {
public:
    Table(std::string command, std::vector<Column> columns)
        : command_(std::move(command)), columns_(std::move(columns)) {}

    void add_row(std::vector<Cell> cells) { rows_.push_back(std::move(cells)); }

    void write(std::ostream& os, const std::string& format) const {
        if (format == "json") write_json(os);
        else write_csv(os);
    }

private:
    void write_csv(std::ostream& os) const {
        for (std::size_t c = 0; c < columns_.size(); ++c) {
            if (c > 0) os << ',';
            if (columns_[c].kind == ColKind::cplx)
                os << columns_[c].name << "_re," << columns_[c].name << "_im";
            else
                os << columns_[c].name;
        }
        os << '\n';
        for (const auto& row : rows_) {
            for (std::size_t c = 0; c < columns_.size(); ++c) {
                if (c > 0) os << ',';
                const Cell& cell = row[c];
                switch (columns_[c].kind) {
                case ColKind::integer:
                    if (cell.present) os << cell.i;
                    break;
                case ColKind::real:
                    if (cell.present) os << fmt_double(cell.d);
                    break;
                case ColKind::cplx:
                    if (cell.present)
                        os << fmt_double(cell.z.real()) << ',' << fmt_double(cell.z.imag());
                    else
                        os << ',';
                    break;
                case ColKind::text:
                    os << csv_escape(cell.s);
                    break;
                }
            }
            os << '\n';
        }
    }

    void write_json(std::ostream& os) const {
        nlohmann::ordered_json doc;
        doc["schema_version"] = "1";
        doc["command"] = command_;
        auto rows = nlohmann::ordered_json::array();
        for (const auto& row : rows_) {
            auto obj = nlohmann::ordered_json::object();
            for (std::size_t c = 0; c < columns_.size(); ++c) {
                const Cell& cell = row[c];
                const std::string& name = columns_[c].name;
                switch (columns_[c].kind) {
                case ColKind::integer:
                    if (cell.present) obj[name] = cell.i;
                    else obj[name] = nullptr;
                    break;
                case ColKind::real:
                    if (cell.present) obj[name] = cell.d;
                    else obj[name] = nullptr;
                    break;
                case ColKind::cplx:
                    if (cell.present)
                        obj[name] = nlohmann::ordered_json::array({cell.z.real(), cell.z.imag()});
                    else
                        obj[name] = nullptr;
                    break;
                case ColKind::text:
                    obj[name] = cell.s;
                    break;
                }
            }
            rows.push_back(std::move(obj));
        }
        doc["rows"] = std::move(rows);
        os << doc.dump(2) << '\n';
    }

    std::string command_;
    std::vector<Column> columns_;
    std::vector<std::vector<Cell>> rows_;
};

int finish(const Table& table, const std::string& format, const std::string& out,
           bool had_error) {
    if (out.empty()) {
        table.write(std::cout, format);
    } else {
        std::ofstream file(out, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open output file: " + out);
        table.write(file, format);
    }
    return had_error ? 1 : 0;
}

// ---------------------------------------------------------------------------
// token parsing

std::vector<std::string> split(const std::string& s, const std::string& seps) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : s) {
        if (seps.find(ch) != std::string::npos) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    return parts;
}

double parse_double_token(const std::string& tok, const char* what) {
    std::size_t pos = 0;
    double v = 0.0;
    if (!tok.empty()) {
        try {
            v = std::stod(tok, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
    }
    if (tok.empty() || pos != tok.size())
        throw UsageError(std::string(what) + ": cannot parse '" + tok + "' as a number");
    return v;
}

long long parse_int_token(const std::string& tok, const char* what) {
    std::size_t pos = 0;
    long long v = 0;
    if (!tok.empty()) {
        try {
            v = std::stoll(tok, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
    }
    if (tok.empty() || pos != tok.size())
        throw UsageError(std::string(what) + ": cannot parse '" + tok + "' as an integer");
    return v;
}

// xi is radians, or the tokens `classical` (0) and `quantum` (pi/2)
double parse_xi_token(const std::string& tok) {
    if (tok == "classical") return 0.0;
    if (tok == "quantum") return std::numbers::pi / 2;
    return parse_double_token(tok, "--xi");
}

std::vector<double> parse_xi_list(const std::vector<std::string>& tokens) {
    std::vector<double> xis;
    for (const std::string& tok : tokens)
        for (const std::string& part : split(tok, ",;")) xis.push_back(parse_xi_token(part));
    return xis;
}

std::vector<double> parse_double_list(const std::vector<std::string>& tokens, const char* what) {
    std::vector<double> values;
    for (const std::string& tok : tokens)
        for (const std::string& part : split(tok, ",;")) values.push_back(parse_double_token(part, what));
    return values;
}

std::vector<unsigned> parse_order_list(const std::vector<std::string>& tokens) {
    std::vector<unsigned> orders;
    for (const std::string& tok : tokens) {
        for (const std::string& part : split(tok, ",;")) {
            const long long r = parse_int_token(part, "--r");
            if (r < 0) throw UsageError("--r: orders must be nonnegative, got " + part);
            orders.push_back(static_cast<unsigned>(r));
        }
    }
    return orders;
}

// complex entries are `re` or `re,im`, separated by `;` between entries
std::vector<cd> parse_u_list(const std::vector<std::string>& tokens) {
    std::vector<cd> us;
    for (const std::string& tok : tokens) {
        for (const std::string& entry : split(tok, ";")) {
            const std::vector<std::string> parts = split(entry, ",");
            if (parts.empty() || parts.size() > 2)
                throw UsageError("--u: expected 're' or 're,im', got '" + entry + "'");
            const double re = parse_double_token(parts[0], "--u");
            const double im = parts.size() == 2 ? parse_double_token(parts[1], "--u") : 0.0;
            us.emplace_back(re, im);
        }
    }
    return us;
}

// ---------------------------------------------------------------------------
// input sources

struct Source {
    std::optional<TorusSpec> torus;
    std::optional<TransitionMatrix> matrix;
};

Source open_source(const std::string& torus_arg, const std::string& matrix_arg) {
    Source src;
    if (!torus_arg.empty()) {
        const std::vector<std::string> parts = split(torus_arg, ",");
        if (parts.size() != 2) throw UsageError("--torus: expected 'd,N', got '" + torus_arg + "'");
        const long long d = parse_int_token(parts[0], "--torus");
        const long long n = parse_int_token(parts[1], "--torus");
        if (d < 1 || d > 1024) throw UsageError("--torus: dimension out of range: " + parts[0]);
        src.torus.emplace(static_cast<int>(d), n);
    } else {
        src.matrix.emplace(walkzeta::load_transition_csv_file(matrix_arg));
    }
    return src;
}

// eigenvalues for the spectral routes; matrix input must be symmetric
Spectrum source_spectrum(const Source& src) {
    if (src.torus) return walkzeta::torus_spectrum(*src.torus);
    return walkzeta::hermitian_eigenvalues(*src.matrix);
}

unsigned long long source_size(const Source& src) {
    return src.torus ? src.torus->vertex_count() : src.matrix->size();
}

// dense transition matrix when the determinant cross-check is affordable
std::optional<TransitionMatrix> det_check_matrix(const Source& src) {
    if (source_size(src) > kDetCheckCap) return std::nullopt;
    if (src.torus) return walkzeta::build_torus_transition(*src.torus);
    return *src.matrix;
}

// det(I - u P) for the discrete-time cross-check
cd dtm_resolvent_determinant(const TransitionMatrix& p, cd u) {
    ComplexMatrix b = ComplexMatrix::from_transition(p);
    const std::size_t n = b.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) b(i, j) = (i == j ? 1.0 : 0.0) - u * b(i, j);
    return walkzeta::lu_determinant(b);
}

void require_even_grid(unsigned long long grid) {
    if (grid < 2 * walkzeta::kLimitGridMin || grid % 2 != 0)
        throw UsageError("--grid must be even and at least " +
                         std::to_string(2 * walkzeta::kLimitGridMin));
}

// ---------------------------------------------------------------------------
// subcommands

int run_spectrum(const Source& src, const std::string& format, const std::string& out) {
    Table table("spectrum", {{"index", ColKind::integer}, {"value", ColKind::cplx}});
    long long index = 0;
    if (src.torus) {
        for (double v : walkzeta::torus_spectrum_row_major(*src.torus))
            table.add_row({cell_int(index++), cell_cplx(cd(v, 0.0))});
    } else {
        const Spectrum spectrum = walkzeta::hermitian_eigenvalues(*src.matrix);
        for (const cd& v : spectrum.values()) table.add_row({cell_int(index++), cell_cplx(v)});
    }
    return finish(table, format, out, false);
}

int run_zeta(const Source& src, const std::string& model, const std::vector<double>& xis,
             const std::vector<double>& ts, const std::vector<cd>& us,
             std::optional<unsigned long long> grid, const std::string& format,
             const std::string& out) {
    const std::string method = src.torus ? "grid" : "spectral";
    const double n = static_cast<double>(source_size(src));
    const std::optional<TransitionMatrix> pdet = det_check_matrix(src);
    bool had_error = false;

    if (model == "dtm") {
        const Spectrum spectrum = source_spectrum(src);
        Table table("zeta", {{"u", ColKind::cplx},
                             {"log_zeta_inverse", ColKind::cplx},
                             {"zeta_inverse", ColKind::cplx},
                             {"method", ColKind::text},
                             {"residual", ColKind::real},
                             {"error", ColKind::text}});
        for (cd u : us) {
            try {
                const walkzeta::ZetaValue z = walkzeta::dtm_zeta_inverse(spectrum, u);
                Cell residual = cell_empty();
                if (pdet) {
                    const cd det = dtm_resolvent_determinant(*pdet, u);
                    residual = cell_real(std::abs(det - std::exp(n * z.log_zeta_inverse)) /
                                         (1.0 + std::abs(det)));
                }
                table.add_row({cell_cplx(u), cell_cplx(z.log_zeta_inverse),
                               cell_cplx(z.zeta_inverse), cell_text(method), residual,
                               cell_text("")});
            } catch (const std::exception& e) {
                had_error = true;
                table.add_row({cell_cplx(u), cell_empty(), cell_empty(), cell_text(method),
                               cell_empty(), cell_text(e.what())});
            }
        }
        return finish(table, format, out, had_error);
    }

    // ctm: one row per (xi, t, u); limit columns only when --grid was given
    const bool with_limit = grid.has_value();
    if (with_limit && !src.torus) throw UsageError("--grid limits apply to --torus sources only");
    std::vector<Column> columns{{"xi", ColKind::real},
                                {"t", ColKind::real},
                                {"u", ColKind::cplx},
                                {"log_zeta_inverse", ColKind::cplx},
                                {"zeta_inverse", ColKind::cplx},
                                {"method", ColKind::text},
                                {"residual", ColKind::real}};
    if (with_limit) {
        columns.push_back({"limit_log_zeta_inverse", ColKind::cplx});
        columns.push_back({"limit_zeta_inverse", ColKind::cplx});
        columns.push_back({"limit_delta", ColKind::real});
    }
    columns.push_back({"error", ColKind::text});
    Table table("zeta", std::move(columns));

    std::optional<Spectrum> spectrum;
    if (!src.torus) spectrum = source_spectrum(src);

    for (double xi : xis) {
        for (double t : ts) {
            std::optional<EvolutionParams> params;
            std::string params_error;
            try {
                params.emplace(xi, t);
            } catch (const std::exception& e) {
                params_error = e.what();
            }
            for (cd u : us) {
                std::vector<Cell> row{cell_real(xi), cell_real(t), cell_cplx(u)};
                try {
                    if (!params) throw std::runtime_error(params_error);
                    const walkzeta::ZetaValue z =
                        src.torus ? walkzeta::torus_zeta_inverse_finite(*src.torus, *params, u)
                                  : walkzeta::ctm_zeta_inverse_spectral(*spectrum, *params, u);
                    row.push_back(cell_cplx(z.log_zeta_inverse));
                    row.push_back(cell_cplx(z.zeta_inverse));
                    row.push_back(cell_text(method));
                    if (pdet) {
                        const cd det = walkzeta::ctm_zeta_inverse_determinant(*pdet, *params, u);
                        row.push_back(cell_real(std::abs(det - std::exp(n * z.log_zeta_inverse)) /
                                                (1.0 + std::abs(det))));
                    } else {
                        row.push_back(cell_empty());
                    }
                    if (with_limit) {
                        const walkzeta::ZetaValue lim =
                            walkzeta::torus_zeta_inverse_limit(src.torus->d, *params, u, *grid);
                        const walkzeta::ZetaValue half =
                            walkzeta::torus_zeta_inverse_limit(src.torus->d, *params, u, *grid / 2);
                        row.push_back(cell_cplx(lim.log_zeta_inverse));
                        row.push_back(cell_cplx(lim.zeta_inverse));
                        row.push_back(cell_real(std::abs(lim.zeta_inverse - half.zeta_inverse)));
                    }
                    row.push_back(cell_text(""));
                } catch (const std::exception& e) {
                    had_error = true;
                    row.resize(3);
                    row.push_back(cell_empty());  // log_zeta_inverse
                    row.push_back(cell_empty());  // zeta_inverse
                    row.push_back(cell_text(method));
                    row.push_back(cell_empty());  // residual
                    if (with_limit) {
                        row.push_back(cell_empty());
                        row.push_back(cell_empty());
                        row.push_back(cell_empty());
                    }
                    row.push_back(cell_text(e.what()));
                }
                table.add_row(std::move(row));
            }
        }
    }
    return finish(table, format, out, had_error);
}

int run_coeff(const Source& src, const std::string& model, const std::vector<double>& xis,
              const std::vector<double>& ts, const std::vector<unsigned>& rs,
              unsigned long long grid, const std::string& format, const std::string& out) {
    bool had_error = false;

    if (model == "dtm") {
        // r-step return quantities: the finite average plus the lattice limit
        // (closed form in d <= 2, two-grid quadrature estimate above)
        const bool torus = src.torus.has_value();
        std::vector<Column> columns{{"r", ColKind::integer}, {"finite", ColKind::real}};
        if (torus) {
            columns.push_back({"limit", ColKind::real});
            columns.push_back({"limit_delta", ColKind::real});
        }
        columns.push_back({"error", ColKind::text});
        Table table("coeff", std::move(columns));
        std::optional<Spectrum> spectrum;
        if (!torus) spectrum = source_spectrum(src);
        for (unsigned r : rs) {
            std::vector<Cell> row{cell_int(r)};
            try {
                if (torus) {
                    row.push_back(cell_real(walkzeta::dtm_coeff_torus(*src.torus, r)));
                    const walkzeta::ReturnProbabilityEstimate est =
                        walkzeta::dtrw_return_probability_estimate(src.torus->d, r, grid);
                    row.push_back(cell_real(est.value));
                    row.push_back(cell_real(est.uncertainty));
                } else {
                    row.push_back(cell_real(walkzeta::dtm_coeff(*spectrum, r).real()));
                }
                row.push_back(cell_text(""));
            } catch (const std::exception& e) {
                had_error = true;
                row.resize(1);
                row.push_back(cell_empty());
                if (torus) {
                    row.push_back(cell_empty());
                    row.push_back(cell_empty());
                }
                row.push_back(cell_text(e.what()));
            }
            table.add_row(std::move(row));
        }
        return finish(table, format, out, had_error);
    }

    // ctm: finite grid, limit quadrature, and Bessel closed form side by side
    const bool torus = src.torus.has_value();
    if (torus) require_even_grid(grid);
    std::vector<Column> columns{{"xi", ColKind::real}, {"t", ColKind::real},
                                {"r", ColKind::integer}, {"finite", ColKind::cplx}};
    if (torus) {
        columns.push_back({"limit", ColKind::cplx});
        columns.push_back({"limit_delta", ColKind::real});
        columns.push_back({"bessel", ColKind::cplx});
    }
    columns.push_back({"error", ColKind::text});
    Table table("coeff", std::move(columns));

    std::optional<Spectrum> spectrum;
    if (!torus) spectrum = source_spectrum(src);

    for (double xi : xis) {
        for (double t : ts) {
            std::optional<EvolutionParams> params;
            std::string params_error;
            try {
                params.emplace(xi, t);
            } catch (const std::exception& e) {
                params_error = e.what();
            }
            for (unsigned r : rs) {
                std::vector<Cell> row{cell_real(xi), cell_real(t), cell_int(r)};
                try {
                    if (!params) throw std::runtime_error(params_error);
                    if (torus) {
                        row.push_back(
                            cell_cplx(walkzeta::torus_coeff_finite(*src.torus, *params, r)));
                        const cd quad = walkzeta::torus_coeff_finite(
                            TorusSpec(src.torus->d, static_cast<long long>(grid)), *params, r);
                        const cd quad_half = walkzeta::torus_coeff_finite(
                            TorusSpec(src.torus->d, static_cast<long long>(grid / 2)), *params, r);
                        row.push_back(cell_cplx(quad));
                        row.push_back(cell_real(std::abs(quad - quad_half)));
                        row.push_back(cell_cplx(
                            walkzeta::torus_coeff_limit_bessel(src.torus->d, *params, r)));
                    } else {
                        row.push_back(cell_cplx(walkzeta::ctm_coeff(*spectrum, *params, r)));
                    }
                    row.push_back(cell_text(""));
                } catch (const std::exception& e) {
                    had_error = true;
                    row.resize(3);
                    row.push_back(cell_empty());
                    if (torus) {
                        row.push_back(cell_empty());
                        row.push_back(cell_empty());
                        row.push_back(cell_empty());
                    }
                    row.push_back(cell_text(e.what()));
                }
                table.add_row(std::move(row));
            }
        }
    }
    return finish(table, format, out, had_error);
}

int run_walk(const std::string& kind, double t, const std::string& xi_token, bool xi_given,
             std::optional<long long> radius_opt, const std::string& format,
             const std::string& out) {
    const long long radius =
        radius_opt ? *radius_opt
                   : std::min<long long>(walkzeta::kWalkSiteCap,
                                         static_cast<long long>(std::ceil(t)) + kWalkWindowPad);
    if (radius < 0 || radius > walkzeta::kWalkSiteCap)
        throw UsageError("--radius must lie in [0, " + std::to_string(walkzeta::kWalkSiteCap) +
                         "]");

    if (kind == "kernel") {
        const EvolutionParams params(parse_xi_token(xi_token), t);
        const Kernel k = walkzeta::kernel(params, std::max<long long>(1, radius));
        // display the requested window, trimming exact-zero tails
        long long lo = -radius, hi = radius;
        while (lo < 0 && k.at(lo) == cd(0.0, 0.0)) ++lo;
        while (hi > 0 && k.at(hi) == cd(0.0, 0.0)) --hi;
        Table table("walk",
                    {{"x", ColKind::integer}, {"value", ColKind::cplx}, {"abs2", ColKind::real}});
        for (long long x = lo; x <= hi; ++x) {
            const cd v = k.at(x);
            table.add_row({cell_int(x), cell_cplx(v), cell_real(std::norm(v))});
        }
        return finish(table, format, out, false);
    }

    if (xi_given)
        throw UsageError("--xi applies to 'kernel' only; ctrw and ctqw fix the endpoint phase");
    std::vector<double> probabilities;
    for (long long x = -radius; x <= radius; ++x)
        probabilities.push_back(kind == "ctrw" ? walkzeta::ctrw_pmf(t, x)
                                               : walkzeta::ctqw_pmf(t, x));
    long long lo = -radius, hi = radius;
    while (lo < 0 && probabilities[lo + radius] == 0.0) ++lo;
    while (hi > 0 && probabilities[hi + radius] == 0.0) --hi;
    Table table("walk", {{"x", ColKind::integer}, {"probability", ColKind::real}});
    for (long long x = lo; x <= hi; ++x)
        table.add_row({cell_int(x), cell_real(probabilities[x + radius])});
    return finish(table, format, out, false);
}

int run_verify(const std::string& level_token) {
    const walkzeta::VerifyLevel level =
        level_token == "full" ? walkzeta::VerifyLevel::full : walkzeta::VerifyLevel::quick;
    bool all_pass = true;
    for (const walkzeta::CheckResult& r : walkzeta::run_verification(level)) {
        all_pass = all_pass && r.pass;
        std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name << " (" << r.detail << ")\n";
    }
    std::cout << (all_pass ? "all checks passed\n" : "some checks FAILED\n");
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"zeta functions of interpolated random/quantum walks on tori,"
                 " with lattice kernels and self checks"};
    app.require_subcommand(1);

    // --- spectrum ---------------------------------------------------------
    auto* spectrum_cmd = app.add_subcommand("spectrum", "eigenvalues of the transition matrix");
    std::string sp_torus, sp_matrix, sp_format = "csv", sp_out;
    {
        auto* source = spectrum_cmd->add_option_group("source");
        source->add_option("--torus", sp_torus, "torus as d,N");
        source->add_option("--matrix", sp_matrix, "transition-matrix CSV file (symmetric)");
        source->require_option(1);
        spectrum_cmd->add_option("--format", sp_format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        spectrum_cmd->add_option("--out", sp_out, "output file (default stdout)");
    }

    // --- zeta -------------------------------------------------------------
    auto* zeta_cmd = app.add_subcommand("zeta", "zeta sweep over (xi, t, u)");
    std::string ze_torus, ze_matrix, ze_model = "ctm", ze_format = "csv", ze_out;
    std::vector<std::string> ze_xi{"classical"}, ze_t{"1"}, ze_u;
    unsigned long long ze_grid = 0;
    {
        auto* source = zeta_cmd->add_option_group("source");
        source->add_option("--torus", ze_torus, "torus as d,N");
        source->add_option("--matrix", ze_matrix, "transition-matrix CSV file (symmetric)");
        source->require_option(1);
        zeta_cmd->add_option("--model", ze_model, "ctm (default) or dtm")
            ->check(CLI::IsMember({"ctm", "dtm"}));
        zeta_cmd->add_option("--xi", ze_xi, "phases: radians, 'classical', or 'quantum'");
        zeta_cmd->add_option("--t", ze_t, "times (ctm only)");
        zeta_cmd->add_option("--u", ze_u, "arguments as 're,im;re,im;...'")->required();
        zeta_cmd->add_option("--grid", ze_grid,
                             "also emit the infinite-volume limit on this momentum grid");
        zeta_cmd->add_option("--format", ze_format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        zeta_cmd->add_option("--out", ze_out, "output file (default stdout)");
    }

    // --- coeff ------------------------------------------------------------
    auto* coeff_cmd = app.add_subcommand("coeff", "series coefficients C_r");
    std::string co_torus, co_matrix, co_model = "ctm", co_format = "csv", co_out;
    std::vector<std::string> co_xi{"classical"}, co_t{"1"}, co_r;
    unsigned long long co_grid = 256;
    {
        auto* source = coeff_cmd->add_option_group("source");
        source->add_option("--torus", co_torus, "torus as d,N");
        source->add_option("--matrix", co_matrix, "transition-matrix CSV file (symmetric)");
        source->require_option(1);
        coeff_cmd->add_option("--model", co_model, "ctm (default) or dtm")
            ->check(CLI::IsMember({"ctm", "dtm"}));
        coeff_cmd->add_option("--xi", co_xi, "phases: radians, 'classical', or 'quantum'");
        coeff_cmd->add_option("--t", co_t, "times (ctm only)");
        coeff_cmd->add_option("--r", co_r, "coefficient orders")->required();
        coeff_cmd->add_option("--grid", co_grid, "momentum grid for the limit quadrature");
        coeff_cmd->add_option("--format", co_format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        coeff_cmd->add_option("--out", co_out, "output file (default stdout)");
    }

    // --- walk -------------------------------------------------------------
    auto* walk_cmd = app.add_subcommand("walk", "lattice walk distribution or kernel");
    std::string wa_kind, wa_xi = "classical", wa_format = "csv", wa_out;
    double wa_t = 0.0;
    long long wa_radius = -1;
    {
        walk_cmd->add_option("kind", wa_kind, "ctrw, ctqw, or kernel")
            ->required()
            ->check(CLI::IsMember({"ctrw", "ctqw", "kernel"}));
        walk_cmd->add_option("--t", wa_t, "evolution time")->required();
        walk_cmd->add_option("--xi", wa_xi, "phase (kernel only)");
        walk_cmd->add_option("--radius", wa_radius, "window half-width (default from t)");
        walk_cmd->add_option("--format", wa_format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        walk_cmd->add_option("--out", wa_out, "output file (default stdout)");
    }

    // --- verify -----------------------------------------------------------
    auto* verify_cmd = app.add_subcommand("verify", "run the cross-route self checks");
    std::string ve_level = "quick";
    verify_cmd->add_option("level", ve_level, "quick (default) or full")
        ->check(CLI::IsMember({"quick", "full"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*spectrum_cmd) return run_spectrum(open_source(sp_torus, sp_matrix), sp_format, sp_out);
        if (*zeta_cmd) {
            if (ze_model == "dtm" && (zeta_cmd->count("--xi") > 0 || zeta_cmd->count("--t") > 0))
                throw UsageError("--xi and --t apply to the ctm model only");
            std::optional<unsigned long long> grid;
            if (zeta_cmd->count("--grid") > 0) {
                require_even_grid(ze_grid);
                grid = ze_grid;
            }
            return run_zeta(open_source(ze_torus, ze_matrix), ze_model, parse_xi_list(ze_xi),
                            parse_double_list(ze_t, "--t"), parse_u_list(ze_u), grid, ze_format,
                            ze_out);
        }
        if (*coeff_cmd) {
            if (co_model == "dtm" && (coeff_cmd->count("--xi") > 0 || coeff_cmd->count("--t") > 0))
                throw UsageError("--xi and --t apply to the ctm model only");
            return run_coeff(open_source(co_torus, co_matrix), co_model, parse_xi_list(co_xi),
                             parse_double_list(co_t, "--t"), parse_order_list(co_r), co_grid,
                             co_format, co_out);
        }
        if (*walk_cmd) {
            std::optional<long long> radius;
            if (walk_cmd->count("--radius") > 0) radius = wa_radius;
            return run_walk(wa_kind, wa_t, wa_xi, walk_cmd->count("--xi") > 0, radius, wa_format,
                            wa_out);
        }
        if (*verify_cmd) return run_verify(ve_level);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
