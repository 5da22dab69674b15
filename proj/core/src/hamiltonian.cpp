#include "qp/hamiltonian.hpp"

namespace qp {

namespace {

ExprPtr F(const AlgebraSpec& A, int i) { return gen(A.fsym(i)); }
ExprPtr Alpha(const AlgebraSpec& A, int i) { return gen(A.asym(i)); }

ExprPtr chi_tree(const AlgebraSpec& A, const IndexSubset& c)
{
    return tree_of_mpoly(A, chi(A, c).num());
}

ExprPtr weight_alternating_sum_sq(const AlgebraSpec& A)
{
    // (sum_{i=1}^l (-1)^{i-1} w_i)^2, a central constant
    RatFn s(MPoly(A.symbols.size()));
    for (int i = 1; i <= A.l; ++i) {
        auto w = fundamental_weight(A, i);
        s = i % 2 == 1 ? s + w : s - w;
    }
    return pow(tree_of_mpoly(A, (s * s).num()), 1);
}

} // namespace

ExprPtr hamiltonian_H0(const AlgebraSpec& A)
{
    if (A.family != Family::K)
        throw BadAlgebra("H_0 is defined on the K family, got " + A.name);
    const int l = A.l;
    if (l == 1)
        return sum({scale(Rational(1, 2), sum({prod({F(A, 0), F(A, 1)}), prod({F(A, 1), F(A, 0)})})),
                    prod({Alpha(A, 1), F(A, 2)})});

    std::vector<ExprPtr> terms;
    if (l == 2) {
        terms.push_back(prod({F(A, 0), F(A, 1), F(A, 2)}));
        terms.push_back(prod({gen("h"), F(A, 1)}));
    } else if (l == 3) {
        terms.push_back(prod({F(A, 0), F(A, 1), F(A, 2), F(A, 3)}));
        terms.push_back(prod({gen("h"), F(A, 1), F(A, 2)}));
    } else {
        for (const auto& K : enumerate_S(l % 2 == 0 ? 3 : 4, l))
            terms.push_back(monomial_fK(K));
    }
    for (const auto& K : enumerate_S(l % 2 == 0 ? 1 : 2, l))
        terms.push_back(prod({chi_tree(A, complement(K)), monomial_fK(K)}));
    if (l % 2 == 1)
        terms.push_back(weight_alternating_sum_sq(A));
    return sum(std::move(terms));
}

ExprPtr closed_flow_tree(const AlgebraSpec& A, int i)
{
    const int l = A.l;
    if (l == 1) {
        switch (i) {
        case 0:
            return sum({prod({F(A, 0), F(A, 2)}), prod({F(A, 2), F(A, 0)}), Alpha(A, 0)});
        case 1:
            return sum({neg(prod({F(A, 1), F(A, 2)})), neg(prod({F(A, 2), F(A, 1)})), Alpha(A, 1)});
        case 2:
            return sub(F(A, 1), F(A, 0));
        default:
            throw BadIndex("l=1 carries f0, f1, f2");
        }
    }
    const int n = l / 2;
    ExprPtr fi = F(A, i);
    if (l % 2 == 0) {
        std::vector<ExprPtr> oddsum, evensum;
        for (int r = 1; r <= n; ++r) {
            oddsum.push_back(F(A, i + 2 * r - 1));
            evensum.push_back(F(A, i + 2 * r));
        }
        return sum({prod({fi, sum(std::move(oddsum))}), neg(prod({sum(std::move(evensum)), fi})),
                    Alpha(A, i)});
    }
    std::vector<ExprPtr> q1, q2, asum, fsum;
    for (int r = 1; r <= n; ++r)
        for (int s = r; s <= n; ++s) {
            q1.push_back(prod({F(A, i + 2 * r - 1), F(A, i + 2 * s)}));
            q2.push_back(prod({F(A, i + 2 * r), F(A, i + 2 * s + 1)}));
        }
    for (int r = 1; r <= n; ++r) {
        asum.push_back(neg(Alpha(A, i + 2 * r)));
        fsum.push_back(F(A, i + 2 * r));
    }
    asum.insert(asum.begin(), scale(Rational(1, 2), gen("k")));
    return sum({prod({fi, sum(std::move(q1))}), neg(prod({sum(std::move(q2)), fi})),
                prod({sum(std::move(asum)), fi}), prod({Alpha(A, i), sum(std::move(fsum))})});
}

Derivation painleve_flow(const AlgebraSpec& A)
{
    if (A.family != Family::K)
        throw BadAlgebra("the Painleve flow lives on the K family, got " + A.name);
    const int l = A.l;
    Derivation d;
    d.values["h"] = scalar(0);

    if (l == 1) {
        for (int i = 0; i <= 2; ++i)
            d.values[A.fsym(i)] = closed_flow_tree(A, i);
        d.values["alpha0"] = d.values["alpha1"] = scalar(0);
        // canonical symbols: q = f1, p = f2; x flows through x = f0 + f1 + f2^2
        d.values["q"] = d.values["f1"];
        d.values["p"] = d.values["f2"];
        Derivation base = d;
        d.values["x"] = base(sum({gen("f0"), gen("f1"), pow(gen("f2"), 2)}));
        return d;
    }

    for (int i = 0; i <= l; ++i)
        d.values[A.fsym(i)] = closed_flow_tree(A, i);
    for (int i = 0; i <= l; ++i)
        d.values[A.asym(i)] = scalar(0);
    Derivation base = d;
    d.values["k"] = scalar(0);
    d.values["x"] = base(A.gens.at("x"));
    if (l % 2 == 1) {
        d.values["x0"] = base(A.gens.at("x0"));
        d.values["x1"] = base(A.gens.at("x1"));
    }
    return d;
}

std::vector<Identity> theorem1_identities(const AlgebraSpec& A)
{
    std::vector<Identity> out;
    const int l = A.l;
    auto H = hamiltonian_H0(A);
    auto flow = painleve_flow(A);
    for (int i = 0; i <= (l == 1 ? 2 : l); ++i) {
        ExprPtr fi = F(A, i);
        ExprPtr lhs = sub(prod({H, fi}), prod({fi, H}));
        // move the inhomogeneities of the definition to the right-hand side
        std::vector<ExprPtr> rhs_terms{flow.values.at(A.fsym(i))};
        if (l % 2 == 0 || l == 1) {
            if (i == 0)
                rhs_terms.push_back(neg(gen("k")));
        } else {
            rhs_terms.push_back(scale(Rational(i % 2 == 0 ? 1 : -1, 2), prod({gen("k"), fi})));
            if (i == 0)
                rhs_terms.push_back(neg(prod({gen("k"), gen("x0")})));
        }
        out.push_back({"[H0," + A.fsym(i) + "]=h*flow", &A, lhs,
                       prod({gen("h"), sum(std::move(rhs_terms))})});
    }
    return out;
}

std::vector<Identity> conservation_identities(const AlgebraSpec& A)
{
    std::vector<Identity> out;
    const int l = A.l;
    auto flow = painleve_flow(A);
    if (l == 1) {
        auto xf = sum({gen("f0"), gen("f1"), pow(gen("f2"), 2)});
        out.push_back({"d(f0+f1+f2^2)=k", &A, flow(xf), gen("k")});
        return out;
    }
    if (l % 2 == 0) {
        std::vector<ExprPtr> s;
        for (int i = 0; i <= l; ++i)
            s.push_back(F(A, i));
        out.push_back({"d(sum f)=k", &A, flow(sum(std::move(s))), gen("k")});
        return out;
    }
    std::vector<ExprPtr> ev, od;
    for (int i = 0; i <= l; i += 2)
        ev.push_back(F(A, i));
    for (int i = 1; i <= l; i += 2)
        od.push_back(F(A, i));
    auto x0 = sum(std::move(ev)), x1 = sum(std::move(od));
    out.push_back({"d(x0)=(k/2)x0", &A, flow(x0), scale(Rational(1, 2), prod({gen("k"), x0}))});
    out.push_back({"d(x1)=(k/2)x1", &A, flow(x1), scale(Rational(1, 2), prod({gen("k"), x1}))});
    return out;
}

std::vector<Identity> rescaled_flow_identities(const AlgebraSpec& A)
{
    // h * d(ft_i) == [H0, ft_i] + d_{i0} h k x0^2. The inhomogeneity carries
    // a factor k (the usual statement omits it; differentiating
    // ft_0 = x0 f0 with dx0 = (k/2) x0 forces it).
    std::vector<Identity> out;
    const int l = A.l;
    if (l % 2 == 0 || l == 1)
        return out;
    auto flow = painleve_flow(A);
    auto x0 = A.gens.at("x0");
    auto H = hamiltonian_H0(A);
    for (int i = 0; i <= l; ++i) {
        ExprPtr ft = i % 2 == 0 ? prod({x0, F(A, i)}) : prod({inverse(x0), F(A, i)});
        ExprPtr lhs = prod({gen("h"), flow(ft)});
        std::vector<ExprPtr> rhs{sub(prod({H, ft}), prod({ft, H}))};
        if (i == 0)
            rhs.push_back(prod({gen("h"), gen("k"), x0, x0}));
        out.push_back({"rescaled flow f~" + std::to_string(i), &A, lhs, sum(std::move(rhs))});
    }
    return out;
}

CanonicalMaps canonical_map(const AlgebraSpec& K)
{
    if (K.family != Family::K)
        throw BadAlgebra("canonical coordinates are defined on K_l");
    const int l = K.l;
    CanonicalMaps m{build_canonical(l, K.order()), {}, {}};
    auto q = [](int i) { return gen("q" + std::to_string(i)); };
    auto p = [](int i) { return gen("p" + std::to_string(i)); };

    if (l == 1) {
        m.to_canonical["f0"] = sum({gen("x"), neg(gen("q")), neg(pow(gen("p"), 2))});
        m.to_canonical["f1"] = gen("q");
        m.to_canonical["f2"] = gen("p");
        m.to_f["q"] = gen("f1");
        m.to_f["p"] = gen("f2");
        m.to_f["x"] = sum({gen("f0"), gen("f1"), pow(gen("f2"), 2)});
        return m;
    }

    const int n = l / 2;
    if (l % 2 == 0) {
        std::vector<ExprPtr> f0{gen("x")};
        for (int r = 1; r <= n; ++r)
            f0.push_back(neg(q(r)));
        f0.push_back(neg(p(n)));
        m.to_canonical["f0"] = sum(std::move(f0));
        m.to_canonical["f1"] = p(1);
        m.to_canonical["f2"] = q(1);
        for (int i = 2; i <= n; ++i) {
            m.to_canonical[K.fsym(2 * i - 1)] = sub(p(i), p(i - 1));
            m.to_canonical[K.fsym(2 * i)] = q(i);
        }
        std::vector<ExprPtr> xs;
        for (int i = 0; i <= l; ++i)
            xs.push_back(gen(K.fsym(i)));
        m.to_f["x"] = sum(std::move(xs));
        for (int i = 1; i <= n; ++i) {
            m.to_f["q" + std::to_string(i)] = gen(K.fsym(2 * i));
            std::vector<ExprPtr> ps;
            for (int r = 1; r <= i; ++r)
                ps.push_back(gen(K.fsym(2 * r - 1)));
            m.to_f["p" + std::to_string(i)] = sum(std::move(ps));
        }
        return m;
    }

    // odd l = 2n+1: x0-weighted coordinates
    auto x0 = gen("x0");
    std::vector<ExprPtr> f0{x0};
    for (int r = 1; r <= n; ++r)
        f0.push_back(neg(prod({inverse(x0), q(r)})));
    m.to_canonical["f0"] = sum(std::move(f0));
    m.to_canonical["f1"] = prod({x0, p(1)});
    m.to_canonical["f2"] = prod({inverse(x0), q(1)});
    for (int i = 2; i <= n; ++i) {
        m.to_canonical[K.fsym(2 * i - 1)] = prod({x0, sub(p(i), p(i - 1))});
        m.to_canonical[K.fsym(2 * i)] = prod({inverse(x0), q(i)});
    }
    // f_l is determined by x1 and the lower odd coordinates: f_l = x1 - x0 p_n
    m.to_canonical[K.fsym(l)] = sub(gen("x1"), prod({x0, p(n)}));
    std::vector<ExprPtr> ev, od;
    for (int i = 0; i <= l; i += 2)
        ev.push_back(gen(K.fsym(i)));
    for (int i = 1; i <= l; i += 2)
        od.push_back(gen(K.fsym(i)));
    auto x0f = sum(std::move(ev));
    m.to_f["x0"] = x0f;
    m.to_f["x1"] = sum(std::move(od));
    for (int i = 1; i <= n; ++i) {
        m.to_f["q" + std::to_string(i)] = prod({x0f, gen(K.fsym(2 * i))});
        std::vector<ExprPtr> ps;
        for (int r = 1; r <= i; ++r)
            ps.push_back(gen(K.fsym(2 * r - 1)));
        m.to_f["p" + std::to_string(i)] = prod({inverse(x0f), sum(std::move(ps))});
    }
    return m;
}

std::vector<Identity> heisenberg_identities(const AlgebraSpec& K, const CanonicalMaps& maps)
{
    std::vector<Identity> out;
    const int l = K.l;
    const int n = l == 1 ? 1 : l / 2;
    const AlgebraSpec& C = maps.C;
    auto flow = painleve_flow(K);
    auto H_C = substitute(hamiltonian_H0(K), maps.to_canonical);

    std::vector<std::string> qs, ps;
    if (l == 1) {
        qs = {"q"};
        ps = {"p"};
    } else {
        for (int i = 1; i <= n; ++i) {
            qs.push_back("q" + std::to_string(i));
            ps.push_back("p" + std::to_string(i));
        }
    }

    // canonical relations realized by the forward expressions inside K
    for (size_t i = 0; i < ps.size(); ++i)
        for (size_t j = 0; j < qs.size(); ++j) {
            auto pi = maps.to_f.at(ps[i]), qj = maps.to_f.at(qs[j]);
            auto c = sub(prod({pi, qj}), prod({qj, pi}));
            out.push_back({"[" + ps[i] + "," + qs[j] + "] in K", &K, c,
                           i == j ? gen("h") : scalar(0)});
        }

    // round trips
    for (auto& [f, expr] : maps.to_canonical)
        out.push_back({"roundtrip " + f, &K, substitute(expr, maps.to_f), gen(f)});
    for (auto& [y, expr] : maps.to_f)
        out.push_back({"roundtrip " + y, &C, substitute(expr, maps.to_canonical), gen(y)});

    // Heisenberg equations against the pushed-forward flow
    for (auto& y : qs) {
        auto comm = sub(prod({H_C, gen(y)}), prod({gen(y), H_C}));
        auto push = substitute(flow(maps.to_f.at(y)), maps.to_canonical);
        out.push_back({"[H," + y + "]=h*push", &C, comm, prod({gen("h"), push})});
    }
    for (auto& y : ps) {
        auto comm = sub(prod({H_C, gen(y)}), prod({gen(y), H_C}));
        auto push = substitute(flow(maps.to_f.at(y)), maps.to_canonical);
        out.push_back({"[H," + y + "]=h*push", &C, comm, prod({gen("h"), push})});
    }

    // central flows
    if (l % 2 == 0 || l == 1) {
        out.push_back({"d(x)=k", &K, flow(maps.to_f.at("x")), gen("k")});
    } else {
        out.push_back({"d(x0)=(k/2)x0", &K, flow(maps.to_f.at("x0")),
                       scale(Rational(1, 2), prod({gen("k"), maps.to_f.at("x0")}))});
        out.push_back({"d(x1)=(k/2)x1", &K, flow(maps.to_f.at("x1")),
                       scale(Rational(1, 2), prod({gen("k"), maps.to_f.at("x1")}))});
    }
    return out;
}

} // namespace qp
