// cmh: command line front end for the survey pipeline.

#include <cstdlib>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cmh/error.hpp"
#include "cmh/survey.hpp"
#include "cmh/verify.hpp"

#ifndef CMH_DEFAULT_CATALOG
#define CMH_DEFAULT_CATALOG "data/catalog.json"
#endif

using namespace cmh;

namespace {

unsigned default_precision()
{
    if (const char* env = std::getenv("CMH_PRECISION")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end && *end == '\0' && v >= 64 && v <= 1u << 16)
            return static_cast<unsigned>(v);
        std::cerr << "warning: ignoring CMH_PRECISION=" << env << "\n";
    }
    return 256;
}

std::string ball(const ComplexBall& z)
{
    std::string re = format_real(z.re(), 20), im = format_real(z.im(), 20);
    return re + (im[0] == '-' ? " - " + im.substr(1) : " + " + im) + "*I";
}

void print_matrix(std::ostream& os, const std::string& name, const RationalMatrix& m)
{
    os << name << ":\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << "  [";
        for (std::size_t j = 0; j < m.cols(); ++j)
            os << (j ? ", " : "") << to_string(m(i, j));
        os << "]\n";
    }
}

void print_point(std::ostream& os, const std::string& name, const SiegelPoint& z)
{
    os << name << ":\n";
    for (std::size_t i = 0; i < z.g; ++i)
        for (std::size_t j = i; j < z.g; ++j) {
            os << "  z" << i + 1 << j + 1 << " = " << ball(z.z(i, j));
            if (z.exact)
                os << "  [" << z.exact->m(i, j).to_string() << " in " << z.exact->field->base()->name() << "]";
            os << "\n";
        }
}

void print_construction(std::ostream& os, const CatalogEntry& e, const Construction& c)
{
    static const char* kinds[] = {"simple", "product", "hermitian"};
    os << "entry " << e.label << " (" << kinds[static_cast<int>(e.kind)] << ")\n";
    os << "g = " << c.g << ", Disc(R) = " << to_string(c.disc_R) << ", e_R = " << to_string(c.e_R) << "\n";
    for (std::size_t k = 0; k < c.parts.size(); ++k) {
        const PolarizedCMLattice& p = c.parts[k];
        os << "part " << k << ": field " << p.field->base()->name() << ", CM type {";
        for (std::size_t s = 0; s < p.cm_type.embedding_indices.size(); ++s)
            os << (s ? ", " : "") << p.cm_type.embedding_indices[s];
        os << "}\n";
        print_matrix(os, "  lattice basis", p.lattice.basis());
        os << "  E =";
        for (std::size_t i = 0; i < p.e.rows(); ++i)
            for (std::size_t j = 0; j < p.e.cols(); ++j)
                os << " " << p.e(i, j).to_string();
        os << "\n";
        print_matrix(os, "  Riemann form Gram", p.gram);
        if (k < c.det.size())
            os << "  det Gram = " << to_string(c.det[k].det) << ", formula " << to_string(c.det[k].expected)
               << (c.det[k].holds ? " (holds)" : " (FAILS)") << "\n";
        if (k < c.normalize_index.size())
            os << "  normalized index [O_K : nu I] = " << to_string(c.normalize_index[k]) << "\n";
    }
    if (c.basis)
        print_matrix(os, "symplectic basis", to_rational(c.basis->transform));
    if (c.hermitian)
        os << "Hermitian reduction: bound " << (c.hermitian->bound_holds ? "holds" : "FAILS")
           << ", max entry " << format_real(c.hermitian->max_entry) << "\n";
    print_point(os, "period matrix Z", c.z);
}

Catalog load_or_die(const std::string& path, unsigned bits)
{
    Catalog cat = load_catalog(path, {bits});
    for (const auto& r : cat.rejects)
        std::cerr << r << "\n";
    return cat;
}

const CatalogEntry& entry_or_die(const Catalog& cat, const std::string& label)
{
    const CatalogEntry* e = find_entry(cat, label);
    if (!e)
        throw Error(ErrorKind::InvalidArgument, "no entry labelled " + label);
    return *e;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"CM period matrices, Siegel reduction and heights"};
    app.require_subcommand(1);
    unsigned bits = default_precision();
    std::string catalog = CMH_DEFAULT_CATALOG, label;

    auto* construct_cmd = app.add_subcommand("construct", "polarize an entry and print its period matrix");
    construct_cmd->add_option("--entry", label, "entry label")->required();
    construct_cmd->add_option("--catalog", catalog, "catalog JSON");
    construct_cmd->add_option("--precision", bits, "working precision in bits")->check(CLI::Range(64u, 65536u));

    auto* reduce_cmd = app.add_subcommand("reduce", "run the pipeline on one entry and print the reduction");
    reduce_cmd->add_option("--entry", label, "entry label")->required();
    reduce_cmd->add_option("--catalog", catalog, "catalog JSON");
    reduce_cmd->add_option("--precision", bits, "working precision in bits")->check(CLI::Range(64u, 65536u));

    std::string out = "survey.csv", format = "csv";
    double cap = 10;
    bool no_timings = false;
    unsigned jobs = 1;
    auto* survey_cmd = app.add_subcommand("survey", "run every catalog entry and write the result table");
    survey_cmd->add_option("--catalog", catalog, "catalog JSON");
    survey_cmd->add_option("--out", out, "output path");
    survey_cmd->add_option("--format", format, "csv or tsv")->check(CLI::IsMember({"csv", "tsv"}));
    survey_cmd->add_option("--precision", bits, "starting precision in bits")->check(CLI::Range(64u, 65536u));
    survey_cmd->add_option("--cap", cap, "ceiling exponent for H <= |Disc(R)|^cap")->check(CLI::PositiveNumber);
    survey_cmd->add_flag("--no-timings", no_timings, "write 0 in the ms column");
    survey_cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1u, 256u));

    std::vector<std::string> filter;
    std::uint64_t seed = 20240601;
    auto* verify_cmd = app.add_subcommand("verify", "run the property suites");
    verify_cmd->add_option("--filter", filter, "comma separated tags")->delimiter(',');
    verify_cmd->add_option("--seed", seed, "random seed");
    verify_cmd->add_option("--catalog", catalog, "catalog JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        if (*construct_cmd) {
            Catalog cat = load_or_die(catalog, bits);
            const CatalogEntry& e = entry_or_die(cat, label);
            print_construction(std::cout, e, construct(e, {bits}));
            return 0;
        }
        if (*reduce_cmd) {
            Catalog cat = load_or_die(catalog, bits);
            const CatalogEntry& e = entry_or_die(cat, label);
            PipelineOptions opt;
            opt.bits = bits;
            ResultRow row = run_pipeline(e, opt);
            std::cout << "entry " << e.label << ": " << row.status;
            if (!row.message.empty())
                std::cout << " (" << row.message << ")";
            std::cout << "\n";
            if (!row.ok())
                return 1;
            const ReductionResult& r = *row.reduction;
            std::cout << "precision " << row.bits_used << " bits, h(Z) = " << format_real(row.h_Z) << "\n";
            print_matrix(std::cout, "gamma", to_rational(r.gamma.matrix()));
            print_point(std::cout, "reduced Z", r.z);
            std::cout << "trace (" << r.trace.steps.size() << " steps):\n" << r.trace.serialize();
            std::cout << "H = " << format_real(row.H) << ", naive H = " << to_string(row.naive_H)
                      << ", max degree " << row.degree_max << "\n";
            return 0;
        }
        if (*survey_cmd) {
            Catalog cat = load_or_die(catalog, bits);
            PipelineOptions opt;
            opt.bits = bits;
            opt.timings = !no_timings;
            std::vector<ResultRow> rows = run_survey(cat, opt, jobs);
            std::optional<FitReport> fit;
            try {
                fit = fit_exponent(rows, cap);
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::InsufficientData)
                    throw;
                if (!rows.empty())
                    std::cerr << "fit: insufficient data\n";
            }
            emit(rows, fit, out, format);
            bool failed = !cat.rejects.empty();
            for (const auto& r : rows)
                if (!r.ok() && r.status != "none-found") {
                    failed = true;
                    std::cerr << r.label << ": " << r.status << ": " << r.message << "\n";
                }
            return failed ? 1 : 0;
        }
        if (*verify_cmd) {
            VerifyReport rep = verify_suite(filter, seed, catalog);
            std::cout << "seed " << rep.seed << "\n";
            for (const auto& s : rep.suites) {
                char t[32];
                std::snprintf(t, sizeof t, "%.1fs", s.seconds);
                std::cout << (s.passed ? "PASS " : "FAIL ") << s.tag << ": " << s.detail << " [" << t << "]\n";
            }
            return rep.passed() ? 0 : 1;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << error_kind_name(e.kind()) << ": " << e.what() << "\n";
        return e.kind() == ErrorKind::InvalidArgument || e.kind() == ErrorKind::Io || e.kind() == ErrorKind::Parse ? 2
                                                                                                                    : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
