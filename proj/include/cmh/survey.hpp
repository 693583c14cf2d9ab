#pragma once

// Catalog ingestion, the end-to-end pipeline from a CM lattice to a reduced
// period matrix and its height, exponent fits and CSV/TSV output.

#include <optional>
#include <string>
#include <vector>

#include "cmh/heights.hpp"

namespace cmh {

struct FactorSpec {
    CMFieldPtr field;
    CMType cm_type;
    ZLattice lattice;
    std::optional<AlgebraicNumber> xi;  // override for the search
};

struct CatalogEntry {
    enum class Kind { Simple, Product, Hermitian };
    std::string label;
    Kind kind = Kind::Simple;
    std::vector<FactorSpec> factors;     // two for products, one otherwise
    std::optional<AlgebraicMatrix> form; // Hermitian entries: E on the rank-2 module
    CMFieldPtr closure;                  // field holding the exact period matrix
};

struct Catalog {
    std::vector<CatalogEntry> entries;
    std::vector<std::string> rejects;  // "verify:<label>: ..." or "parse: <path>: ..."
};

// Throws Error(Io) when the file cannot be read and Error(Parse) when it is
// not JSON of the documented shape. Bad entries are collected in `rejects`.
Catalog load_catalog(const std::string& path, const PrecisionContext& ctx = {});
Catalog parse_catalog(const std::string& text, const PrecisionContext& ctx = {});
const CatalogEntry* find_entry(const Catalog& c, const std::string& label);

// Everything up to the unreduced period matrix.
struct Construction {
    std::size_t g = 0;
    Integer disc_R, e_R;
    std::vector<PolarizedCMLattice> parts;
    std::vector<DetFormula> det;
    std::vector<Integer> normalize_index;
    std::vector<XiReduction> balancing;
    std::optional<SymplecticBasis> basis;  // absent for products (per-factor bases)
    std::optional<HermitianReduction> hermitian;
    SiegelPoint z;
};
Construction construct(const CatalogEntry& e, const PrecisionContext& ctx);

struct PipelineOptions {
    unsigned bits = 256;
    std::vector<unsigned> retries{512, 1024};
    std::optional<Real> height_cap;  // default |Disc(R)|^10
    bool timings = true;
};

struct ResultRow {
    std::string label;
    std::string status = "ok";  // ok, none-found, undecidable-at-precision, error:<kind>
    std::string message;
    std::size_t g = 0;
    Integer disc_R, e_R;
    Real H;
    Integer naive_H;
    Real h_Z;
    Integer gamma_max;
    std::size_t steps = 0;
    long ms = 0;

    unsigned bits_used = 0;
    std::size_t degree_max = 0;
    bool det_formula = false;
    bool im_posdef = false;
    Real asymmetry;
    std::optional<bool> hermitian_bound;
    std::optional<ReductionResult> reduction;

    bool ok() const { return status == "ok"; }
};

// Never throws for entry-level failures; they end up in `status`.
ResultRow run_pipeline(const CatalogEntry& e, const PipelineOptions& opt = {});
// Rows in catalog order; `jobs` worker threads.
std::vector<ResultRow> run_survey(const Catalog& c, const PipelineOptions& opt, unsigned jobs = 1);

struct FitReport {
    double slope = 0, intercept = 0, residual_max = 0;
    std::size_t samples = 0;
    bool ceiling_check = false;
    double cap = 10;
};
// Least squares of log H on log|Disc(R)| over ok rows. Throws
// Error(InsufficientData).
FitReport fit_exponent(const std::vector<ResultRow>& rows, double cap = 10);
// Least squares of log y on log x over the given pairs.
FitReport fit_loglog(const std::vector<std::pair<double, double>>& xy);

extern const char* const kCsvHeader;
std::string format_rows(const std::vector<ResultRow>& rows, const std::optional<FitReport>& fit, char sep = ',');
// Throws Error(Io).
void emit(const std::vector<ResultRow>& rows, const std::optional<FitReport>& fit, const std::string& path,
          const std::string& format = "csv");

std::string format_real(const Real& x, int digits = 15);

}  // namespace cmh
