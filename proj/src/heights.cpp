#include "cmh/heights.hpp"

#include "cmh/error.hpp"

namespace cmh {

HeightReport height_of_point(const SiegelPoint& z, const PrecisionContext& ctx, bool cm_provenance)
{
    require(z.exact.has_value(), ErrorKind::NoExactField, "point has no exact entries");
    HeightReport rep;
    bool first = true;
    for (std::size_t i = 0; i < z.g; ++i)
        for (std::size_t j = i; j < z.g; ++j) {
            HeightValue h = weil_height(z.exact->m(i, j), ctx);
            EntryHeight e{i, j, h.H, h.naive, h.degree};
            if (first || certainly_lt(rep.H, h.H) || (!certainly_lt(h.H, rep.H) && h.H.mid_double() > rep.H.mid_double()))
                rep.H = h.H;
            first = false;
            if (h.naive > rep.naive_H)
                rep.naive_H = h.naive;
            rep.degree_max = std::max(rep.degree_max, h.degree);
            rep.per_entry.push_back(std::move(e));
        }
    if (cm_provenance)
        require(rep.degree_max <= 4 * z.g, ErrorKind::Internal, "entry degree exceeds 4g");
    return rep;
}

AlgebraicNumber reconstruct(const ComplexBall& b, const FieldPtr& L, const Real& height_cap, std::size_t embedding)
{
    const mpfr_prec_t prec = b.precision();
    auto x = recognize_in_field(L, b, embedding, 3 * prec / 4);
    if (!x)
        throw Error(ErrorKind::NoCandidate, "no integer relation found");
    if (!x->eval(embedding, 2 * prec).overlaps(b))
        throw Error(ErrorKind::NoCandidate, "candidate leaves the ball at doubled precision");
    HeightValue h = weil_height(*x, {static_cast<unsigned>(prec), 3});
    if (certainly_lt(height_cap, h.H))
        throw Error(ErrorKind::NoCandidate, "candidate height exceeds the cap");
    return *x;
}

SiegelPoint reconstruct_point(const SiegelPoint& z, const CMFieldPtr& L, const Real& height_cap,
                              const PrecisionContext& ctx)
{
    AlgebraicMatrix m(z.g, z.g);
    for (std::size_t i = 0; i < z.g; ++i)
        for (std::size_t j = i; j < z.g; ++j)
            m(i, j) = m(j, i) = reconstruct(z.z(i, j), L->base(), height_cap);
    SiegelPoint out = SiegelPoint::from_exact({L, m}, ctx);
    for (std::size_t i = 0; i < z.g; ++i)
        for (std::size_t j = 0; j < z.g; ++j)
            require(out.z(i, j).overlaps(z.z(i, j)), ErrorKind::NoCandidate, "reconstruction disagrees");
    return out;
}

HeightRatio isogeny_height_ratio(const SiegelPoint& z1, const SiegelPoint& z2, const Integer& c,
                                 const PrecisionContext& ctx)
{
    HeightReport h1 = height_of_point(z1, ctx), h2 = height_of_point(z2, ctx);
    return {h1.H / h2.H, c};
}

}  // namespace cmh
