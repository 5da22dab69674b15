#include "qp/algebra.hpp"

#include <cassert>
#include <numeric>
#include <sstream>

namespace qp {

namespace {

ExprPtr comm(const ExprPtr& a, const ExprPtr& b)
{
    return sub(prod({a, b}), prod({b, a}));
}

std::string idx_name(const std::string& base, int i) { return base + std::to_string(i); }

/// Linear equation system for the unknown pairing row of a u-coordinate:
/// each equation states [P, u + L] = rhs * hbar with P, L free of u.
struct PairingEquation {
    MPoly P;
    MPoly L;
    Rational rhs;
    std::string label;
};

std::vector<Rational> solve_pairing_row(const AlgebraSpec& A, int u_pos,
                                        const std::vector<PairingEquation>& eqs)
{
    const StarModel& M = A.model;
    const int nc = M.ncoords();
    // unknowns x_a = theta(u, a) for every coordinate a != u_pos
    std::vector<int> unknown_of_coord(static_cast<size_t>(nc), -1);
    std::vector<int> coord_of_unknown;
    for (int a = 0; a < nc; ++a)
        if (a != u_pos) {
            unknown_of_coord[static_cast<size_t>(a)] = static_cast<int>(coord_of_unknown.size());
            coord_of_unknown.push_back(a);
        }
    const int nu = static_cast<int>(coord_of_unknown.size());

    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs_col;
    for (const auto& eq : eqs) {
        // hbar-linear part of [P, u + L]:
        //   sum_a dP/da * theta(a, u)  +  sum_{a,b} theta[a][b] dP/da dL/db
        // the first summand is -x_a with polynomial coefficient dP/da.
        MPoly known(M.nsymbols);
        std::vector<MPoly> coeff_of_unknown(static_cast<size_t>(nu), MPoly(M.nsymbols));
        for (int a = 0; a < nc; ++a) {
            MPoly dPa = eq.P.derivative(M.symbol_of_coord[static_cast<size_t>(a)]);
            if (dPa.is_zero())
                continue;
            int ux = unknown_of_coord[static_cast<size_t>(a)];
            if (ux >= 0)
                coeff_of_unknown[static_cast<size_t>(ux)] -= dPa; // theta(a,u) = -x_a
            for (int b = 0; b < nc; ++b) {
                const Rational& th = M.theta[static_cast<size_t>(a)][static_cast<size_t>(b)];
                if (th == 0)
                    continue;
                MPoly dLb = eq.L.derivative(M.symbol_of_coord[static_cast<size_t>(b)]);
                if (!dLb.is_zero())
                    known += (dPa * dLb).mul_scalar(th);
            }
        }
        known -= MPoly::constant(M.nsymbols, eq.rhs);
        // per-monomial linear equations
        std::map<ExpVec, size_t, GrlexLess> monos;
        auto note = [&](const MPoly& p) {
            for (auto& [e, c] : p.terms())
                monos.emplace(e, monos.size());
        };
        note(known);
        for (auto& c : coeff_of_unknown)
            note(c);
        for (auto& [e, mi] : monos) {
            std::vector<Rational> row(static_cast<size_t>(nu), Rational(0));
            for (int ux = 0; ux < nu; ++ux) {
                auto it = coeff_of_unknown[static_cast<size_t>(ux)].terms().find(e);
                if (it != coeff_of_unknown[static_cast<size_t>(ux)].terms().end())
                    row[static_cast<size_t>(ux)] = it->second;
            }
            auto it = known.terms().find(e);
            Rational r = it != known.terms().end() ? -it->second : Rational(0);
            rows.push_back(std::move(row));
            rhs_col.push_back(r);
        }
    }

    // Gaussian elimination; demand a consistent system with full column rank.
    std::vector<Rational> sol(static_cast<size_t>(nu), Rational(0));
    size_t nrows = rows.size();
    size_t rank = 0;
    std::vector<int> pivot_col;
    for (int col = 0; col < nu && rank < nrows; ++col) {
        size_t piv = nrows;
        for (size_t r = rank; r < nrows; ++r)
            if (rows[r][static_cast<size_t>(col)] != 0) {
                piv = r;
                break;
            }
        if (piv == nrows)
            continue;
        std::swap(rows[rank], rows[piv]);
        std::swap(rhs_col[rank], rhs_col[piv]);
        Rational inv = Rational(1) / rows[rank][static_cast<size_t>(col)];
        for (auto& v : rows[rank])
            v *= inv;
        rhs_col[rank] *= inv;
        for (size_t r = 0; r < nrows; ++r) {
            if (r == rank)
                continue;
            Rational f = rows[r][static_cast<size_t>(col)];
            if (f == 0)
                continue;
            for (int c = 0; c < nu; ++c)
                rows[r][static_cast<size_t>(c)] -= f * rows[rank][static_cast<size_t>(c)];
            rhs_col[r] -= f * rhs_col[rank];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    for (size_t r = rank; r < nrows; ++r)
        if (rhs_col[r] != 0)
            throw ConstructionFailure(A.name + ": pairing system inconsistent");
    if (rank != static_cast<size_t>(nu))
        throw ConstructionFailure(A.name + ": pairing system underdetermined");
    for (size_t r = 0; r < rank; ++r)
        sol[static_cast<size_t>(pivot_col[r])] = rhs_col[r];

    std::vector<Rational> row(static_cast<size_t>(nc), Rational(0));
    for (int ux = 0; ux < nu; ++ux)
        row[static_cast<size_t>(coord_of_unknown[static_cast<size_t>(ux)])] = sol[static_cast<size_t>(ux)];
    return row;
}

void set_coords(AlgebraSpec& A, const std::vector<std::string>& coords)
{
    A.coordinate_names = coords;
    auto& M = A.model;
    M.nsymbols = A.symbols.size();
    M.coord_of_symbol.assign(static_cast<size_t>(M.nsymbols), -1);
    M.symbol_of_coord.clear();
    for (auto& c : coords) {
        int s = A.symbols.require(c);
        M.coord_of_symbol[static_cast<size_t>(s)] = static_cast<int>(M.symbol_of_coord.size());
        M.symbol_of_coord.push_back(s);
    }
    M.theta.assign(coords.size(), std::vector<Rational>(coords.size(), Rational(0)));
}

void set_theta(AlgebraSpec& A, const std::string& a, const std::string& b, Rational v)
{
    int pa = A.coord_pos(a), pb = A.coord_pos(b);
    A.model.theta[static_cast<size_t>(pa)][static_cast<size_t>(pb)] = v;
    A.model.theta[static_cast<size_t>(pb)][static_cast<size_t>(pa)] = -v;
}

void central_relations(AlgebraSpec& A, const std::vector<std::string>& xs,
                       const std::vector<std::string>& centrals)
{
    for (auto& x : xs)
        for (auto& z : centrals)
            A.relations.push_back({"[" + x + "," + z + "]", comm(gen(x), gen(z)), true, ""});
}

} // namespace

bool AlgebraSpec::is_coordinate(const std::string& n) const
{
    int s = symbols.index(n);
    return s >= 0 && model.coord_of_symbol[static_cast<size_t>(s)] >= 0;
}

int AlgebraSpec::coord_pos(const std::string& n) const
{
    int s = symbols.require(n);
    int p = model.coord_of_symbol[static_cast<size_t>(s)];
    if (p < 0)
        throw BadIndex(n + " is not a coordinate of " + name);
    return p;
}

// ---------------------------------------------------------------------------
// K_l
// ---------------------------------------------------------------------------

AlgebraSpec build_K(int l, int order)
{
    if (l < 1 || order < 1)
        throw ConstructionFailure("K_l needs l >= 1, order >= 1");
    AlgebraSpec A;
    A.family = Family::K;
    A.l = l;
    A.name = "K_" + std::to_string(l);
    A.model.order = order;

    if (l == 1) {
        // canonical realization: (q; p; x) = (f1; f2; f0+f1+f2^2), f0 derived
        for (auto s : {"q", "p", "x", "alpha0", "alpha1"})
            A.symbols.add(s);
        set_coords(A, {"q", "p"});
        set_theta(A, "p", "q", Rational(1));
        A.gens["f0"] = sum({gen("x"), neg(gen("q")), neg(pow(gen("p"), 2))});
        A.gens["f1"] = gen("q");
        A.gens["f2"] = gen("p");
        A.gens["k"] = sum({gen("alpha0"), gen("alpha1")});
        auto f0 = gen("f0"), f1 = gen("f1"), f2 = gen("f2");
        A.relations.push_back({"[f1,f0]=2hf2",
                               sub(comm(f1, f0), prod({scalar(2), gen("h"), f2})), true, ""});
        A.relations.push_back({"[f0,f2]=h", sub(comm(f0, f2), gen("h")), true, ""});
        A.relations.push_back({"[f2,f1]=h", sub(comm(f2, f1), gen("h")), true, ""});
        central_relations(A, {"f0", "f1", "f2"}, {"alpha0", "alpha1"});
        return A;
    }

    std::vector<std::string> coords;
    for (int i = 0; i <= l; ++i)
        coords.push_back(A.symbols.name(A.symbols.add(idx_name("f", i))));
    for (int i = 0; i <= l; ++i)
        A.symbols.add(idx_name("alpha", i));
    set_coords(A, coords);
    for (int i = 0; i <= l; ++i)
        set_theta(A, A.fsym(i), A.fsym(i + 1), Rational(1));

    std::vector<ExprPtr> alphas, fs, fe, fo;
    for (int i = 0; i <= l; ++i) {
        alphas.push_back(gen(A.asym(i)));
        fs.push_back(gen(A.fsym(i)));
        (i % 2 ? fo : fe).push_back(gen(A.fsym(i)));
    }
    A.gens["k"] = sum(alphas);
    A.gens["x"] = sum(fs);
    if (l % 2 == 1) {
        A.gens["x0"] = sum(fe);
        A.gens["x1"] = sum(fo);
    }

    for (int i = 0; i <= l; ++i)
        A.relations.push_back({"[" + A.fsym(i) + "," + A.fsym(i + 1) + "]=h",
                               sub(comm(gen(A.fsym(i)), gen(A.fsym(i + 1))), gen("h")), true, ""});
    for (int i = 0; i <= l; ++i)
        for (int j = i + 2; j <= l; ++j) {
            if (cyclic(j - i, l) == l) // cyclically adjacent wrap pair
                continue;
            A.relations.push_back({"[" + A.fsym(i) + "," + A.fsym(j) + "]=0",
                                   comm(gen(A.fsym(i)), gen(A.fsym(j))), true, ""});
        }
    std::vector<std::string> fnames, anames;
    for (int i = 0; i <= l; ++i) {
        fnames.push_back(A.fsym(i));
        anames.push_back(A.asym(i));
    }
    central_relations(A, fnames, anames);
    return A;
}

// ---------------------------------------------------------------------------
// A_l
// ---------------------------------------------------------------------------

namespace {


/// Evaluate a commutative polynomial tree (symbols only) into an MPoly.
MPoly mpoly_of_tree(const AlgebraSpec& A, const ExprPtr& e)
{
    const int n = A.symbols.size();
    switch (e->kind) {
    case Expr::Kind::Gen:
        return MPoly::symbol(n, A.symbols.require(e->name));
    case Expr::Kind::Scalar:
        return MPoly::constant(n, e->value);
    case Expr::Kind::Sum: {
        MPoly r(n);
        for (auto& k : e->kids)
            r += mpoly_of_tree(A, k);
        return r;
    }
    case Expr::Kind::Prod: {
        MPoly r = MPoly::constant(n, 1);
        for (auto& k : e->kids)
            r = r * mpoly_of_tree(A, k);
        return r;
    }
    case Expr::Kind::Pow: {
        MPoly r = MPoly::constant(n, 1);
        for (int i = 0; i < e->exponent; ++i)
            r = r * mpoly_of_tree(A, e->kids[0]);
        return r;
    }
    default:
        throw ModelError("tree is not polynomial in symbols");
    }
}

} // namespace

AlgebraSpec build_A(int l, int order)
{
    if (l < 1 || order < 1)
        throw ConstructionFailure("A_l needs l >= 1, order >= 1");
    AlgebraSpec A;
    A.family = Family::A;
    A.l = l;
    A.name = "A_" + std::to_string(l);
    A.model.order = order;

    const bool odd = (l % 2 == 1) && l >= 3;
    const int n_half = (l - 1) / 2; // n for odd l = 2n+1

    if (l == 1) {
        for (auto s : {"q", "p", "x", "u1", "eps0", "eps1", "t"})
            A.symbols.add(s);
        set_coords(A, {"q", "p", "u1"});
        set_theta(A, "p", "q", Rational(1));
        A.gens["f0"] = sum({gen("x"), neg(gen("q")), neg(pow(gen("p"), 2))});
        A.gens["f1"] = gen("q");
        A.gens["f2"] = gen("p");
        A.gens["u2"] = sum({gen("u1"), prod({scalar(-2), gen("p")})});
        A.gens["alpha0"] = sum({scalar(1), neg(gen("eps1")), gen("eps0")});
        A.gens["alpha1"] = sub(gen("eps1"), gen("eps0")); // eps2 = eps0
        A.gens["k"] = sum({gen("alpha0"), gen("alpha1")});

        // Pairing of u1 from the compatibility-forced relations. The stated
        // [u1,f0] = [f0,u2] = h have the opposite sign there; their residuals
        // are recorded below.
        std::vector<PairingEquation> eqs;
        auto P = [&](const char* g) { return mpoly_of_tree(A, gen(g)); };
        MPoly zero(A.symbols.size());
        eqs.push_back({P("q"), zero, Rational(-1), "[u1,f1]=h"});
        eqs.push_back({P("p"), zero, Rational(0), "[u1,f2]=0"});
        eqs.push_back({mpoly_of_tree(A, A.gens["f0"]), zero, Rational(1), "[f0,u1]=h"});
        eqs.push_back({P("t"), zero, Rational(0), "[u1,t]=0"});
        auto row = solve_pairing_row(A, A.coord_pos("u1"), eqs);
        for (int a = 0; a < A.model.ncoords(); ++a)
            if (a != A.coord_pos("u1")) {
                A.model.theta[static_cast<size_t>(A.coord_pos("u1"))][static_cast<size_t>(a)] = row[static_cast<size_t>(a)];
                A.model.theta[static_cast<size_t>(a)][static_cast<size_t>(A.coord_pos("u1"))] = -row[static_cast<size_t>(a)];
            }

        auto f0 = gen("f0"), f1 = gen("f1"), f2 = gen("f2"), u1 = gen("u1"), u2 = gen("u2");
        auto h = gen("h");
        A.relations.push_back({"[f1,f0]=2hf2", sub(comm(f1, f0), prod({scalar(2), h, f2})), true, ""});
        A.relations.push_back({"[f0,f2]=h", sub(comm(f0, f2), h), true, ""});
        A.relations.push_back({"[f2,f1]=h", sub(comm(f2, f1), h), true, ""});
        A.relations.push_back({"[u1,f1]=h", sub(comm(u1, f1), h), true, ""});
        A.relations.push_back({"[f1,u2]=h", sub(comm(f1, u2), h), true, ""});
        A.relations.push_back({"[u1,f2]=0", comm(u1, f2), true, ""});
        A.relations.push_back({"[u2,f2]=0", comm(u2, f2), true, ""});
        A.relations.push_back({"[u1,f0]=h", sub(comm(u1, f0), h), false,
                               "sign reversed by the Lax compatibility subsystem"});
        A.relations.push_back({"[f0,u2]=h", sub(comm(f0, u2), h), false,
                               "sign reversed by the Lax compatibility subsystem"});
        central_relations(A, {"f0", "f1", "f2", "u1", "u2"}, {"eps0", "eps1"});
        central_relations(A, {"f0", "f1", "f2"}, {"t"});
        return A;
    }

    // ---- l >= 2 ----
    const int nf_indep = odd ? l - 1 : l;
    std::vector<std::string> coords;
    for (int i = 0; i < nf_indep; ++i)
        coords.push_back(A.symbols.name(A.symbols.add(idx_name("f", i))));
    A.symbols.add("u0");
    coords.push_back("u0");
    A.symbols.add("t");
    if (odd)
        coords.push_back("t"); // [u_i, t] = 2h is forced for odd l
    for (int i = 0; i <= l; ++i)
        A.symbols.add(idx_name("eps", i));
    set_coords(A, coords);
    for (int i = 0; i + 1 < nf_indep; ++i)
        set_theta(A, idx_name("f", i), idx_name("f", i + 1), Rational(1));

    // eliminated coordinates
    auto half_t = scale(Rational(1, 2), gen("t"));
    if (odd) {
        std::vector<ExprPtr> ev{half_t}, od{half_t};
        for (int i = 0; i + 2 < l; i += 2)
            ev.push_back(neg(gen(idx_name("f", i))));
        for (int i = 1; i + 2 < l + 1; i += 2)
            od.push_back(neg(gen(idx_name("f", i))));
        A.gens[idx_name("f", l - 1)] = sum(ev); // even index 2n
        A.gens[idx_name("f", l)] = sum(od);     // odd index 2n+1
    } else {
        std::vector<ExprPtr> rest{gen("t")};
        for (int i = 0; i < l; ++i)
            rest.push_back(neg(gen(idx_name("f", i))));
        A.gens[idx_name("f", l)] = sum(rest);
    }

    // alphas and named sums
    A.gens["alpha0"] = sum({scalar(1), neg(gen("eps1")), gen("eps0")});
    for (int i = 1; i <= l; ++i)
        A.gens[A.asym(i)] = sub(gen(idx_name("eps", i)), gen(idx_name("eps", cyclic(i + 1, l))));
    {
        std::vector<ExprPtr> alphas;
        for (int i = 0; i <= l; ++i)
            alphas.push_back(gen(A.asym(i)));
        A.gens["k"] = sum(alphas);
    }
    if (odd) {
        std::vector<ExprPtr> ev, od;
        for (int i = 0; i <= l; i += 2)
            ev.push_back(gen(A.fsym(i)));
        for (int i = 1; i <= l; i += 2)
            od.push_back(gen(A.fsym(i)));
        A.gens["x0"] = sum(ev);
        A.gens["x1"] = sum(od);
    }

    // u-chains: u_{j+2} = u_j - f_j + f_{j+1}
    std::map<int, ExprPtr> u_tree;
    std::map<int, MPoly> u_lin; // linear part beyond the base coordinate (solver view)
    const int nsym = A.symbols.size();
    auto fpoly = [&](int i) -> MPoly {
        i = cyclic(i, l);
        int s = A.symbols.index(idx_name("f", i));
        if (s >= 0)
            return MPoly::symbol(nsym, s);
        return mpoly_of_tree(A, A.gens.at(idx_name("f", i)));
    };
    auto chain_from = [&](int start, ExprPtr base_tree, MPoly base_lin, int steps) {
        int cur = start;
        ExprPtr tcur = std::move(base_tree);
        MPoly lcur = std::move(base_lin);
        u_tree[cur] = tcur;
        u_lin[cur] = lcur;
        for (int s = 0; s < steps; ++s) {
            int nxt = cyclic(cur + 2, l);
            tcur = sum({tcur, neg(gen(A.fsym(cur))), gen(A.fsym(cur + 1))});
            lcur = lcur - fpoly(cur) + fpoly(cur + 1);
            cur = nxt;
            u_tree[cur] = tcur;
            u_lin[cur] = lcur;
        }
    };

    if (!odd) {
        chain_from(0, gen("u0"), MPoly(nsym), l); // visits every residue
    } else {
        chain_from(0, gen("u0"), MPoly(nsym), n_half);
        // u1 = u0 + delta; delta is the compatibility-forced cross-parity
        // difference, quadratic over t (see the Lax module checks)
        std::vector<ExprPtr> braces{scalar(Rational(1, 2))};
        for (int r = 1; r <= n_half; ++r) {
            std::vector<ExprPtr> b;
            for (int k = 1; k <= r; ++k)
                b.push_back(gen(A.fsym(2 * k - 1)));
            for (int k = r + 1; k <= n_half + 1; ++k)
                b.push_back(neg(gen(A.fsym(2 * k - 1))));
            for (int k = 1; k <= r - 1; ++k)
                b.push_back(neg(gen(A.fsym(2 * k))));
            for (int k = r + 1; k <= n_half; ++k)
                b.push_back(gen(A.fsym(2 * k)));
            braces.push_back(prod({gen(A.fsym(2 * r)), sum(std::move(b))}));
        }
        for (int r = 0; r <= n_half; ++r)
            braces.push_back(neg(gen(A.asym(2 * r))));
        braces.push_back(prod({scalar(n_half + 1), gen("h")}));
        ExprPtr delta = prod({scalar(2), inverse(gen("t")), sum(std::move(braces))});
        A.gens["delta_u"] = delta;
        chain_from(1, sum({gen("u0"), delta}), MPoly(nsym), n_half);
    }
    for (auto& [i, t] : u_tree)
        if (i != 0)
            A.gens[idx_name("u", i)] = t;

    // solve the pairing row of u0
    {
        std::vector<PairingEquation> eqs;
        if (!odd) {
            for (int i = 0; i <= l; ++i) {
                eqs.push_back({fpoly(i), u_lin.at(i), Rational(-1),
                               "[u" + std::to_string(i) + ",f" + std::to_string(i) + "]=h"});
                eqs.push_back({fpoly(i), u_lin.at(cyclic(i + 1, l)), Rational(1),
                               "[f" + std::to_string(i) + ",u" + std::to_string(cyclic(i + 1, l)) + "]=h"});
            }
            eqs.push_back({MPoly::symbol(nsym, A.symbols.require("t")), MPoly(nsym), Rational(0), "[u0,t]=0"});
        } else {
            // the consistent subsystem: even-chain relations short of the wrap
            for (int r = 0; r <= n_half; ++r)
                eqs.push_back({fpoly(2 * r), u_lin.at(2 * r), Rational(-1),
                               "[u" + std::to_string(2 * r) + ",f" + std::to_string(2 * r) + "]=h"});
            for (int r = 0; r + 1 <= n_half; ++r)
                eqs.push_back({fpoly(2 * r + 1), u_lin.at(2 * r + 2), Rational(1),
                               "[f" + std::to_string(2 * r + 1) + ",u" + std::to_string(2 * r + 2) + "]=h"});
        }
        auto row = solve_pairing_row(A, A.coord_pos("u0"), eqs);
        int up = A.coord_pos("u0");
        for (int a = 0; a < A.model.ncoords(); ++a)
            if (a != up) {
                A.model.theta[static_cast<size_t>(up)][static_cast<size_t>(a)] = row[static_cast<size_t>(a)];
                A.model.theta[static_cast<size_t>(a)][static_cast<size_t>(up)] = -row[static_cast<size_t>(a)];
            }
    }

    // relations
    auto h = gen("h");
    auto F = [&](int i) { return gen(A.fsym(i)); };
    auto U = [&](int i) { return gen(idx_name("u", cyclic(i, l))); };
    for (int i = 0; i <= l; ++i) {
        A.relations.push_back({"[" + A.fsym(i) + "," + A.fsym(i + 1) + "]=h",
                               sub(comm(F(i), F(i + 1)), h), true, ""});
        bool uff_holds = !odd || (i % 2 == 0);
        bool fu_holds = !odd || (i % 2 == 1 && i != l);
        A.relations.push_back({"[u" + std::to_string(i) + "," + A.fsym(i) + "]=h",
                               sub(comm(U(i), F(i)), h), uff_holds,
                               uff_holds ? "" : "u gauge freedom; deviation is O(h/t)"});
        A.relations.push_back({"[" + A.fsym(i) + ",u" + std::to_string(cyclic(i + 1, l)) + "]=h",
                               sub(comm(F(i), U(i + 1)), h), fu_holds,
                               fu_holds ? "" : "u gauge freedom; deviation is O(h/t)"});
        A.relations.push_back({"f" + std::to_string(i) + "-f" + std::to_string(cyclic(i + 1, l)) +
                                   "=u" + std::to_string(i) + "-u" + std::to_string(cyclic(i + 2, l)),
                               sub(sub(F(i), F(i + 1)), sub(U(i), U(i + 2))), true, ""});
        A.relations.push_back({"[u" + std::to_string(i) + ",t]=0", comm(U(i), gen("t")), !odd,
                               odd ? "[u_i,t]=2h is forced; the stated relation degenerates the algebra" : ""});
    }
    for (int i = 0; i <= l; ++i)
        for (int j = i + 2; j <= l; ++j) {
            if (cyclic(j - i, l) == l)
                continue;
            A.relations.push_back({"[" + A.fsym(i) + "," + A.fsym(j) + "]=0", comm(F(i), F(j)), true, ""});
        }
    {
        std::vector<ExprPtr> s;
        for (int i = 0; i <= l; ++i)
            s.push_back(F(i));
        A.relations.push_back({"f0+...+fl=t", sub(sum(s), gen("t")), true, ""});
    }
    std::vector<std::string> fnames, enames;
    for (int i = 0; i <= l; ++i)
        fnames.push_back(A.fsym(i));
    for (int i = 0; i <= l; ++i)
        enames.push_back(idx_name("eps", i));
    central_relations(A, fnames, enames);
    central_relations(A, {"u0"}, enames);
    central_relations(A, fnames, {"t"});
    return A;
}

// ---------------------------------------------------------------------------
// F_l
// ---------------------------------------------------------------------------

AlgebraSpec build_F(int l, int order)
{
    if (!(l == 2 || (l % 2 == 1 && l >= 3)) || order < 1)
        throw ConstructionFailure("F_l exists for l = 2 and odd l >= 3");
    AlgebraSpec A;
    A.family = Family::F;
    A.l = l;
    A.name = "F_" + std::to_string(l);
    A.model.order = order;

    if (l == 2) {
        for (auto s : {"psi", "phi0", "phi1", "beta0", "beta1", "t"})
            A.symbols.add(s);
        set_coords(A, {"psi", "phi0", "phi1"});
        set_theta(A, "psi", "phi0", Rational(1, 2));
        set_theta(A, "psi", "phi1", Rational(1, 2));
        A.gens["beta2"] = sum({scalar(1), neg(gen("beta0")), neg(gen("beta1"))});
        A.relations.push_back({"[psi,phi0]=h'/2",
                               sub(comm(gen("psi"), gen("phi0")), scale(Rational(1, 2), gen("h"))), true, ""});
        A.relations.push_back({"[psi,phi1]=h'/2",
                               sub(comm(gen("psi"), gen("phi1")), scale(Rational(1, 2), gen("h"))), true, ""});
        A.relations.push_back({"[phi0,phi1]=0", comm(gen("phi0"), gen("phi1")), true, ""});
        A.relations.push_back({"beta0+beta1+beta2=1",
                               sub(sum({gen("beta0"), gen("beta1"), gen("beta2")}), scalar(1)), true, ""});
        central_relations(A, {"psi", "phi0", "phi1"}, {"beta0", "beta1", "t"});
        return A;
    }

    const int n = (l - 1) / 2;
    std::vector<std::string> coords;
    for (int i = 0; i <= l - 2; ++i)
        coords.push_back(A.symbols.name(A.symbols.add(idx_name("phi", i))));
    for (int i = 0; i <= l - 1; ++i)
        A.symbols.add(idx_name("beta", i));
    A.symbols.add("t");
    set_coords(A, coords);
    for (int i = 0; i + 1 <= l - 2; ++i)
        set_theta(A, idx_name("phi", i), idx_name("phi", i + 1), Rational(1));

    // eliminate phi_{2n} and phi_{2n+1} through the parity-sum constraints
    {
        std::vector<ExprPtr> ev, od;
        for (int i = 0; i + 2 < l; i += 2)
            ev.push_back(neg(gen(idx_name("phi", i))));
        for (int i = 1; i + 2 < l + 1; i += 2)
            od.push_back(neg(gen(idx_name("phi", i))));
        A.gens[idx_name("phi", l - 1)] = sum(ev);
        A.gens[idx_name("phi", l)] = sum(od);
    }
    {
        std::vector<ExprPtr> b{scalar(1)};
        for (int i = 0; i <= l - 1; ++i)
            b.push_back(neg(gen(idx_name("beta", i))));
        A.gens[idx_name("beta", l)] = sum(b);
    }
    // psi_i and gamma_i
    A.gens["psi0"] = sum({gen("phi0"), gen("phi1"), gen("t")});
    A.gens["gamma0"] = sum({gen("beta0"), gen("beta1")});
    for (int i = 1; i <= l - 1; ++i) {
        A.gens[idx_name("psi", i)] = gen(idx_name("phi", i + 1));
        A.gens[idx_name("gamma", i)] = gen(idx_name("beta", i + 1));
    }

    auto P = [&](int i) { return gen(idx_name("phi", cyclic(i, l))); };
    for (int i = 0; i <= l; ++i)
        A.relations.push_back({"[phi" + std::to_string(i) + ",phi" + std::to_string(cyclic(i + 1, l)) + "]=h'",
                               sub(comm(P(i), P(i + 1)), gen("h")), true, ""});
    for (int i = 0; i <= l; ++i)
        for (int j = i + 2; j <= l; ++j) {
            if (cyclic(j - i, l) == l)
                continue;
            A.relations.push_back({"[phi" + std::to_string(i) + ",phi" + std::to_string(j) + "]=0",
                                   comm(P(i), P(j)), true, ""});
        }
    {
        std::vector<ExprPtr> ev, od, b;
        for (int i = 0; i <= l; i += 2)
            ev.push_back(P(i));
        for (int i = 1; i <= l; i += 2)
            od.push_back(P(i));
        for (int i = 0; i <= l; ++i)
            b.push_back(gen(idx_name("beta", i)));
        A.relations.push_back({"phi0+phi2+...=0", sum(ev), true, ""});
        A.relations.push_back({"phi1+phi3+...=0", sum(od), true, ""});
        A.relations.push_back({"beta0+...+betal=1", sub(sum(b), scalar(1)), true, ""});
    }
    (void)n;
    return A;
}

// ---------------------------------------------------------------------------
// canonical coordinates
// ---------------------------------------------------------------------------

AlgebraSpec build_canonical(int l, int order)
{
    if (l == 1)
        return build_K(1, order);
    AlgebraSpec A;
    A.family = Family::Canonical;
    A.l = l;
    A.name = "C_" + std::to_string(l);
    A.model.order = order;
    const int n = l / 2;
    std::vector<std::string> coords;
    for (int i = 1; i <= n; ++i)
        coords.push_back(A.symbols.name(A.symbols.add(idx_name("q", i))));
    for (int i = 1; i <= n; ++i)
        coords.push_back(A.symbols.name(A.symbols.add(idx_name("p", i))));
    if (l % 2 == 0) {
        A.symbols.add("x");
    } else {
        A.symbols.add("x0");
        A.symbols.add("x1");
    }
    for (int i = 0; i <= l; ++i)
        A.symbols.add(idx_name("alpha", i));
    set_coords(A, coords);
    for (int i = 1; i <= n; ++i)
        set_theta(A, idx_name("p", i), idx_name("q", i), Rational(1));
    {
        std::vector<ExprPtr> alphas;
        for (int i = 0; i <= l; ++i)
            alphas.push_back(gen(A.asym(i)));
        A.gens["k"] = sum(alphas);
    }
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            A.relations.push_back(
                {"[p" + std::to_string(i) + ",q" + std::to_string(j) + "]",
                 i == j ? sub(comm(gen(idx_name("p", i)), gen(idx_name("q", j))), gen("h"))
                        : comm(gen(idx_name("p", i)), gen(idx_name("q", j))),
                 true, ""});
    return A;
}

AlgebraSpec build_algebra(const std::string& name, int l, int order)
{
    if (name == "K_l" || name == "K")
        return build_K(l, order);
    if (name == "K_1")
        return build_K(1, order);
    if (name == "A_l" || name == "A")
        return build_A(l, order);
    if (name == "F_l" || name == "F")
        return build_F(l, order);
    if (name == "C" || name == "canonical")
        return build_canonical(l, order);
    throw ConstructionFailure("unknown algebra " + name);
}

ExprPtr tree_of_mpoly(const AlgebraSpec& A, const MPoly& p)
{
    std::vector<ExprPtr> terms;
    for (auto& [e, c] : p.terms()) {
        std::vector<ExprPtr> factors{scalar(c)};
        for (size_t i = 0; i < e.size(); ++i)
            for (uint32_t k = 0; k < e[i]; ++k)
                factors.push_back(gen(A.symbols.name(static_cast<int>(i))));
        terms.push_back(prod(std::move(factors)));
    }
    if (terms.empty())
        return scalar(0);
    return sum(std::move(terms));
}

std::vector<std::string> verify_relations(const AlgebraSpec& A)
{
    auto ev = exact_evaluator(A);
    std::vector<std::string> deviations;
    for (const auto& rel : A.relations) {
        auto r = ev(rel.residual);
        bool zero = star_is_zero(ev.ctx(), r);
        if (rel.holds && !zero)
            throw ConstructionFailure(A.name + ": defining relation failed: " + rel.label);
        if (!rel.holds) {
            std::ostringstream os;
            os << rel.label << " deviates";
            if (zero)
                os << " (unexpectedly holds)";
            else {
                os << ": residual";
                for (int k = 0; k <= A.order(); ++k)
                    if (!r.c[static_cast<size_t>(k)].is_zero()) {
                        auto nm = [&](int s) { return A.symbols.name(s); };
                        os << " h^" << k << "*(" << r.c[static_cast<size_t>(k)].num().str(nm);
                        if (!r.c[static_cast<size_t>(k)].is_polynomial())
                            os << ")/(" << r.c[static_cast<size_t>(k)].den().str(nm);
                        os << ")";
                    }
            }
            if (!rel.note.empty())
                os << " [" << rel.note << "]";
            deviations.push_back(os.str());
        }
    }
    return deviations;
}

} // namespace qp
