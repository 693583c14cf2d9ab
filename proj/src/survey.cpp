#include "cmh/survey.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "cmh/error.hpp"
#include "json.hpp"

namespace cmh {

using nlohmann::json;

namespace {

struct ParseFail {
    std::string where, what;
};

[[noreturn]] void fail(const std::string& where, const std::string& what)
{
    throw ParseFail{where, what};
}

const json& member(const json& obj, const char* key, const std::string& where)
{
    if (!obj.is_object() || !obj.contains(key))
        fail(where, std::string("missing \"") + key + "\"");
    return obj.at(key);
}

Rational rational_of(const json& v, const std::string& where)
{
    if (v.is_number_integer())
        return Rational(Integer(std::to_string(v.get<long long>())));
    if (v.is_string()) {
        try {
            return parse_rational(v.get<std::string>());
        } catch (const Error& e) {
            fail(where, e.what());
        }
    }
    fail(where, "expected an integer or a \"p/q\" string");
}

Integer integer_of(const json& v, const std::string& where)
{
    Rational q = rational_of(v, where);
    if (q.get_den() != 1)
        fail(where, "expected an integer");
    return q.get_num();
}

std::vector<Rational> rational_list(const json& v, const std::string& where)
{
    if (!v.is_array())
        fail(where, "expected an array");
    std::vector<Rational> out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(rational_of(v[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

RationalMatrix rational_matrix(const json& v, const std::string& where)
{
    if (!v.is_array() || v.empty())
        fail(where, "expected a non-empty array of rows");
    std::vector<std::vector<Rational>> rows;
    for (std::size_t i = 0; i < v.size(); ++i) {
        rows.push_back(rational_list(v[i], where + "[" + std::to_string(i) + "]"));
        if (rows.back().size() != rows.front().size())
            fail(where + "[" + std::to_string(i) + "]", "ragged row");
    }
    RationalMatrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        m.set_row(i, rows[i]);
    return m;
}

AlgebraicNumber element_of(const json& v, const FieldPtr& K, const std::string& where)
{
    std::vector<Rational> c = rational_list(v, where);
    if (c.size() > K->degree())
        fail(where, "more coordinates than the field degree");
    c.resize(K->degree(), Rational(0));
    return AlgebraicNumber(K, c);
}

struct FieldSlot {
    CMFieldPtr cm;
    std::string error;
};

class Parser {
public:
    Parser(const json& root, const PrecisionContext& ctx) : root_(root), ctx_(ctx) {}

    CMFieldPtr field(const json& name_value, const std::string& where)
    {
        if (!name_value.is_string())
            fail(where, "expected a field name");
        const std::string name = name_value.get<std::string>();
        auto it = cache_.find(name);
        if (it == cache_.end()) {
            FieldSlot slot;
            try {
                slot.cm = build_field(name);
            } catch (const ParseFail& pf) {
                slot.error = "parse: " + pf.where + ": " + pf.what;
            } catch (const Error& e) {
                slot.error = "field " + name + ": " + std::string(error_kind_name(e.kind())) + ": " + e.what();
            }
            it = cache_.emplace(name, std::move(slot)).first;
        }
        if (!it->second.cm)
            throw Error(ErrorKind::Verify, it->second.error);
        return it->second.cm;
    }

    FactorSpec factor(const json& obj, const std::string& where, std::size_t module_rank = 1)
    {
        FactorSpec f;
        f.field = field(member(obj, "field", where), where + ".field");
        const NumberField& K = *f.field->base();
        const json type = obj.contains("cm_type") ? obj.at("cm_type") : json("upper");
        if (type.is_string()) {
            if (type.get<std::string>() != "upper")
                fail(where + ".cm_type", "expected \"upper\" or a list of embedding indices");
            f.cm_type = upper_cm_type(K);
        } else if (type.is_array()) {
            std::vector<std::size_t> idx;
            for (const auto& v : type) {
                if (!v.is_number_unsigned())
                    fail(where + ".cm_type", "embedding indices must be non-negative integers");
                idx.push_back(v.get<std::size_t>());
            }
            f.cm_type = make_cm_type(K, idx);
        } else {
            fail(where + ".cm_type", "expected \"upper\" or a list of embedding indices");
        }

        const json lat = obj.contains("lattice") ? obj.at("lattice") : json("maximal");
        if (lat.is_string()) {
            const std::string s = lat.get<std::string>();
            if (s == "maximal") {
                f.lattice = ZLattice::maximal_order(f.field->base(), module_rank);
            } else if (s.rfind("order:", 0) == 0 && module_rank == 1) {
                Integer c;
                try {
                    c = Integer(s.substr(6));
                } catch (const std::exception&) {
                    fail(where + ".lattice", "bad conductor in \"" + s + "\"");
                }
                if (c < 1)
                    fail(where + ".lattice", "conductor must be positive");
                f.lattice = ZLattice::order_conductor(f.field->base(), c);
            } else if (s.rfind("real:", 0) == 0 && module_rank == 1) {
                // O_F + c O_K
                Integer c;
                try {
                    c = Integer(s.substr(5));
                } catch (const std::exception&) {
                    fail(where + ".lattice", "bad conductor in \"" + s + "\"");
                }
                if (c < 1)
                    fail(where + ".lattice", "conductor must be positive");
                const RationalMatrix& of = f.field->totally_real_subfield_basis();
                const RationalMatrix& ok = K.integral_basis();
                RationalMatrix gens(of.rows() + ok.rows(), K.degree());
                gens.set_block(0, 0, of);
                gens.set_block(of.rows(), 0, ok.map([&](const Rational& q) { return Rational(q * c); }));
                f.lattice = ZLattice(f.field->base(), gens);
            } else {
                fail(where + ".lattice", "unknown lattice shorthand \"" + s + "\"");
            }
        } else {
            RationalMatrix b = rational_matrix(lat, where + ".lattice");
            if (b.cols() != K.degree() * module_rank || b.rows() != b.cols())
                fail(where + ".lattice", "expected a square basis of size " + std::to_string(K.degree() * module_rank));
            f.lattice = ZLattice(f.field->base(), b, module_rank);
        }

        if (obj.contains("xi")) {
            AlgebraicNumber xi = element_of(obj.at("xi"), f.field->base(), where + ".xi");
            require(!xi.is_zero() && f.field->rho(xi) == -xi, ErrorKind::Verify, "xi is not totally imaginary");
            f.xi = xi;
        }
        return f;
    }

    CatalogEntry entry(const json& obj, const std::string& where)
    {
        CatalogEntry e;
        const json& label = member(obj, "label", where);
        if (!label.is_string() || label.get<std::string>().empty())
            fail(where + ".label", "expected a non-empty string");
        e.label = label.get<std::string>();
        const std::string kind = obj.contains("kind") ? obj.at("kind").get<std::string>() : "simple";
        if (kind == "simple") {
            e.kind = CatalogEntry::Kind::Simple;
            e.factors.push_back(factor(obj, where));
            const std::size_t n = e.factors[0].field->degree();
            require(n == 2 || n == 4, ErrorKind::Verify, "only degree 2 and 4 fields are supported");
        } else if (kind == "product") {
            e.kind = CatalogEntry::Kind::Product;
            const json& fs = member(obj, "factors", where);
            if (!fs.is_array() || fs.size() != 2)
                fail(where + ".factors", "expected two factors");
            for (std::size_t i = 0; i < 2; ++i) {
                e.factors.push_back(factor(fs[i], where + ".factors[" + std::to_string(i) + "]"));
                require(e.factors.back().field->degree() == 2, ErrorKind::Verify, "product factors must be quadratic");
            }
        } else if (kind == "hermitian") {
            e.kind = CatalogEntry::Kind::Hermitian;
            e.factors.push_back(factor(obj, where, 2));
            const FactorSpec& f = e.factors[0];
            require(f.field->degree() == 2, ErrorKind::Verify, "Hermitian entries need an imaginary quadratic field");
            const FieldPtr& K = f.field->base();
            AlgebraicMatrix m(2, 2);
            std::optional<AlgebraicNumber> xi0;
            const char* key = obj.contains("form") ? "form" : "h";
            if (std::string(key) == "h")
                xi0 = element_of(member(obj, "xi0", where), K, where + ".xi0");
            const json& rows = member(obj, key, where);
            if (!rows.is_array() || rows.size() != 2)
                fail(where + "." + key, "expected a 2x2 matrix of field elements");
            for (std::size_t i = 0; i < 2; ++i) {
                if (!rows[i].is_array() || rows[i].size() != 2)
                    fail(where + "." + key, "expected a 2x2 matrix of field elements");
                for (std::size_t j = 0; j < 2; ++j)
                    m(i, j) = element_of(rows[i][j], K,
                                         where + "." + key + "[" + std::to_string(i) + "][" + std::to_string(j) + "]");
            }
            if (xi0)
                m = m.map([&](const AlgebraicNumber& a) { return *xi0 * a; });
            require(is_skew_hermitian(m, *f.field), ErrorKind::Verify, "form is not skew-Hermitian");
            e.form = m;
        } else {
            fail(where + ".kind", "unknown kind \"" + kind + "\"");
        }
        if (obj.contains("galois_closure"))
            e.closure = field(obj.at("galois_closure"), where + ".galois_closure");
        return e;
    }

private:
    CMFieldPtr build_field(const std::string& name)
    {
        const std::string where = "fields." + name;
        const json& fields = member(root_, "fields", "");
        if (!fields.contains(name))
            fail(where, "unknown field");
        const json& d = fields.at(name);
        FieldDescriptor desc;
        desc.name = name;
        const json& poly = member(d, "poly", where);
        if (!poly.is_array() || poly.size() < 2)
            fail(where + ".poly", "expected ascending integer coefficients");
        for (std::size_t i = 0; i < poly.size(); ++i)
            desc.poly.push_back(integer_of(poly[i], where + ".poly[" + std::to_string(i) + "]"));
        const std::size_t n = desc.poly.size() - 1;
        desc.basis = d.contains("basis") ? rational_matrix(d.at("basis"), where + ".basis") : RationalMatrix::identity(n);
        desc.disc = integer_of(member(d, "disc", where), where + ".disc");
        return make_cm_field(verify_field(desc), ctx_);
    }

    const json& root_;
    PrecisionContext ctx_;
    std::map<std::string, FieldSlot> cache_;
};

AlgebraicNumber upper_generator(const CMField& K, const CMType& type, const PrecisionContext& ctx)
{
    AlgebraicNumber t = AlgebraicNumber::generator(K.base());
    AlgebraicNumber z = t - K.rho(t);
    return ball_eval(z, type.embedding_indices[0], ctx).im().certainly_positive() ? z : -z;
}

Real disc_power(const Integer& disc, unsigned long k, mpfr_prec_t prec)
{
    Integer p;
    Integer a = abs(disc);
    mpz_pow_ui(p.get_mpz_t(), a.get_mpz_t(), k);
    return Real(Rational(p), prec);
}

PolarizedCMLattice polarize(const FactorSpec& f, const PrecisionContext& ctx, Construction& c)
{
    const CMField& K = *f.field;
    NormalizedIdeal n = normalize_ideal(f.lattice, K);
    AlgebraicNumber xi = f.xi ? *f.xi / (n.nu * K.rho(n.nu)) : find_principal_xi(n.ideal, f.cm_type, K, ctx).xis[0];
    XiReduction xr = reduce_xi(n.ideal, xi, f.cm_type, K, ctx);
    PolarizedCMLattice p = make_polarized(f.field, f.cm_type, xr.lattice, scalar_form(xr.xi), ctx);
    c.det.push_back(verify_det_formula(p.lattice, p.e, K));
    c.normalize_index.push_back(n.index);
    c.balancing.push_back(std::move(xr));
    return p;
}

}  // namespace

Catalog parse_catalog(const std::string& text, const PrecisionContext& ctx)
{
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::Parse, e.what());
    }
    if (!root.is_object() || !root.contains("entries") || !root.at("entries").is_array())
        throw Error(ErrorKind::Parse, "top level must be an object with an \"entries\" array");
    if (root.contains("fields") && !root.at("fields").is_object())
        throw Error(ErrorKind::Parse, "\"fields\" must be an object");

    Catalog cat;
    Parser parser(root, ctx);
    std::map<std::string, std::size_t> seen;
    const json& entries = root.at("entries");
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const std::string where = "entries[" + std::to_string(i) + "]";
        std::string label = where;
        if (entries[i].is_object() && entries[i].contains("label") && entries[i].at("label").is_string())
            label = entries[i].at("label").get<std::string>();
        try {
            CatalogEntry e = parser.entry(entries[i], where);
            if (seen.count(e.label)) {
                cat.rejects.push_back("verify:" + e.label + ": duplicate label (first at entries[" +
                                      std::to_string(seen[e.label]) + "])");
                continue;
            }
            seen[e.label] = i;
            cat.entries.push_back(std::move(e));
        } catch (const ParseFail& pf) {
            cat.rejects.push_back("parse: " + pf.where + ": " + pf.what);
        } catch (const json::exception& je) {
            cat.rejects.push_back("parse: " + where + ": " + je.what());
        } catch (const Error& err) {
            cat.rejects.push_back("verify:" + label + ": " + std::string(error_kind_name(err.kind())) + ": " +
                                  err.what());
        }
    }
    return cat;
}

Catalog load_catalog(const std::string& path, const PrecisionContext& ctx)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::Io, "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_catalog(ss.str(), ctx);
}

const CatalogEntry* find_entry(const Catalog& c, const std::string& label)
{
    for (const auto& e : c.entries)
        if (e.label == label)
            return &e;
    return nullptr;
}

Construction construct(const CatalogEntry& e, const PrecisionContext& ctx)
{
    Construction c;
    switch (e.kind) {
    case CatalogEntry::Kind::Simple: {
        const FactorSpec& f = e.factors[0];
        Order r = multiplier_ring(f.lattice);
        c.disc_R = r.disc;
        c.e_R = r.index;
        c.parts.push_back(polarize(f, ctx, c));
        c.g = c.parts[0].g();
        c.basis = symplectic_basis(c.parts[0].gram);
        c.z = period_matrix(c.parts[0], *c.basis, ctx, e.closure);
        break;
    }
    case CatalogEntry::Kind::Product: {
        c.disc_R = 1;
        c.e_R = 1;
        for (const auto& f : e.factors) {
            c.parts.push_back(polarize(f, ctx, c));
            c.e_R *= multiplier_ring(f.lattice).index;
        }
        ProductPolarized pp = product_polarized(c.parts[0], c.parts[1]);
        c.disc_R = pp.disc;
        c.g = 2;
        c.z = period_matrix(pp, ctx, e.closure);
        break;
    }
    case CatalogEntry::Kind::Hermitian: {
        const FactorSpec& f = e.factors[0];
        const CMField& K = *f.field;
        Order r = multiplier_ring(f.lattice);
        c.disc_R = r.disc;
        c.e_R = r.index;
        PolarizedCMLattice p = make_polarized(f.field, f.cm_type, f.lattice, *e.form, ctx);
        c.det.push_back(verify_det_formula(p.lattice, p.e, K));
        c.hermitian = hermitian_reduce(e.form->map([](const AlgebraicNumber& a) { return -a; }),
                                       upper_generator(K, f.cm_type, ctx), K, ctx, f.lattice);
        c.g = 2;
        c.basis = symplectic_basis(p.gram);
        c.z = period_matrix(p, *c.basis, ctx, e.closure);
        c.parts.push_back(std::move(p));
        break;
    }
    }
    for (const auto& d : c.det)
        require(d.holds, ErrorKind::FormulaViolated, "determinant formula fails");
    return c;
}

ResultRow run_pipeline(const CatalogEntry& e, const PipelineOptions& opt)
{
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    ResultRow row;
    row.label = e.label;
    std::vector<unsigned> ladder{opt.bits};
    for (unsigned b : opt.retries)
        if (b > ladder.back())
            ladder.push_back(b);

    for (std::size_t attempt = 0; attempt < ladder.size(); ++attempt) {
        PrecisionContext ctx{ladder[attempt]};
        row.bits_used = ctx.bits;
        try {
            Construction c = construct(e, ctx);
            row.g = c.g;
            row.disc_R = c.disc_R;
            row.e_R = c.e_R;
            row.det_formula = true;
            row.im_posdef = certified_positive_definite(c.z.imag_part());
            row.asymmetry = c.z.asymmetry;
            if (c.hermitian)
                row.hermitian_bound = c.hermitian->bound_holds;
            ReductionResult red = reduce(c.z);
            SiegelPoint zr = red.z;
            if (!zr.exact && e.closure) {
                Real cap = opt.height_cap ? *opt.height_cap : disc_power(c.disc_R, 10, ctx.bits);
                zr = reconstruct_point(zr, e.closure, cap, ctx);
            }
            HeightReport h = height_of_point(zr, ctx);
            row.H = h.H;
            row.naive_H = h.naive_H;
            row.degree_max = h.degree_max;
            row.h_Z = red.trace.h_start;
            row.gamma_max = red.trace.gamma_max_entry;
            row.steps = red.trace.steps.size();
            row.reduction = std::move(red);
            row.status = "ok";
            row.message.clear();
            break;
        } catch (const Error& err) {
            const bool precision = err.kind() == ErrorKind::UndecidableAtPrecision ||
                                   err.kind() == ErrorKind::PrecisionExhausted;
            row.message = err.what();
            if (precision) {
                row.status = "undecidable-at-precision";
                continue;
            }
            row.status = err.kind() == ErrorKind::NoneFound ? "none-found"
                                                           : "error:" + std::string(error_kind_name(err.kind()));
            break;
        } catch (const std::exception& ex) {
            row.status = "error:internal";
            row.message = ex.what();
            break;
        }
    }
    if (opt.timings)
        row.ms = std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() - t0).count();
    return row;
}

std::vector<ResultRow> run_survey(const Catalog& c, const PipelineOptions& opt, unsigned jobs)
{
    std::vector<ResultRow> rows(c.entries.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < rows.size(); i = next++)
            rows[i] = run_pipeline(c.entries[i], opt);
    };
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(1, rows.size()))));
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < jobs; ++j)
        pool.emplace_back(work);
    work();
    for (auto& t : pool)
        t.join();
    return rows;
}

FitReport fit_loglog(const std::vector<std::pair<double, double>>& xy)
{
    require(xy.size() >= 2, ErrorKind::InsufficientData, "at least two samples are needed");
    double sx = 0, sy = 0;
    for (const auto& [x, y] : xy) {
        sx += x;
        sy += y;
    }
    const double n = static_cast<double>(xy.size()), mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (const auto& [x, y] : xy) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    require(sxx > 0, ErrorKind::InsufficientData, "all samples share one abscissa");
    FitReport f;
    f.samples = xy.size();
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    for (const auto& [x, y] : xy)
        f.residual_max = std::max(f.residual_max, std::abs(y - f.intercept - f.slope * x));
    return f;
}

FitReport fit_exponent(const std::vector<ResultRow>& rows, double cap)
{
    std::vector<std::pair<double, double>> xy;
    bool ceiling = true;
    for (const auto& r : rows) {
        if (!r.ok())
            continue;
        const double x = std::log(std::abs(r.disc_R.get_d()));
        const double y = log(r.H).mid_double();
        xy.emplace_back(x, y);
        if ((cap == std::floor(cap) && certainly_lt(disc_power(r.disc_R, static_cast<unsigned long>(cap), r.H.precision()), r.H)) ||
            y > cap * x + 1e-9)
            ceiling = false;
    }
    FitReport f = fit_loglog(xy);
    f.ceiling_check = ceiling;
    f.cap = cap;
    return f;
}

const char* const kCsvHeader = "label,g,disc_R,e_R,H,naive_H,h_Z,gamma_max,steps,ms,status";

std::string format_real(const Real& x, int digits)
{
    char buf[128];
    mpfr_snprintf(buf, sizeof buf, "%.*Rg", digits, x.mid().get());
    return buf;
}

std::string format_rows(const std::vector<ResultRow>& rows, const std::optional<FitReport>& fit, char sep)
{
    std::ostringstream out;
    std::string header = kCsvHeader;
    if (sep != ',')
        for (auto& ch : header)
            if (ch == ',')
                ch = sep;
    out << header << '\n';
    for (const auto& r : rows) {
        out << r.label;
        if (r.ok()) {
            out << sep << r.g << sep << to_string(r.disc_R) << sep << to_string(r.e_R) << sep << format_real(r.H) << sep
                << to_string(r.naive_H) << sep << format_real(r.h_Z) << sep << to_string(r.gamma_max) << sep
                << r.steps << sep << r.ms;
        } else {
            for (int k = 0; k < 9; ++k)
                out << sep;
        }
        out << sep << r.status << '\n';
    }
    if (fit) {
        char buf[256];
        std::snprintf(buf, sizeof buf,
                      "# fit log H = a + b log|Disc(R)|: b=%.6f a=%.6f residual_max=%.6f samples=%zu\n"
                      "# ceiling H <= |Disc(R)|^%g: %s\n",
                      fit->slope, fit->intercept, fit->residual_max, fit->samples, fit->cap,
                      fit->ceiling_check ? "true" : "false");
        out << buf;
    }
    return out.str();
}

void emit(const std::vector<ResultRow>& rows, const std::optional<FitReport>& fit, const std::string& path,
          const std::string& format)
{
    require(format == "csv" || format == "tsv", ErrorKind::InvalidArgument, "format must be csv or tsv");
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorKind::Io, "cannot write " + path);
    out << format_rows(rows, fit, format == "csv" ? ',' : '\t');
    if (!out)
        throw Error(ErrorKind::Io, "write failed: " + path);
}

}  // namespace cmh
