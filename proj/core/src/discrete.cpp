#include "qp/discrete.hpp"

#include <sstream>

namespace qp {

std::vector<std::string> translation_word(int i, int l)
{
    if (i < 1 || i > l + 1)
        throw BadIndex("translation index out of range");
    std::vector<std::string> w;
    for (int r = i - 1; r >= 1; --r)
        w.push_back("s" + std::to_string(r));
    w.push_back("pi");
    for (int r = l; r >= i; --r)
        w.push_back("s" + std::to_string(r));
    return w;
}

namespace {

std::vector<Identity> word_equal(const AlgebraSpec& A, const std::string& label,
                                 const Substitution& wl, const Substitution& wr)
{
    std::vector<Identity> out;
    for (auto& g : weyl_generators(A))
        out.push_back({label + " on " + g, &A, wl(g), wr(g)});
    return out;
}

} // namespace

std::vector<Identity> translation_commute_identities(const AlgebraSpec& A)
{
    std::vector<Identity> out;
    std::vector<Substitution> T;
    for (int i = 1; i <= A.l + 1; ++i)
        T.push_back(weyl_word(A, translation_word(i, A.l)));
    for (int i = 0; i <= A.l; ++i)
        for (int j = i + 1; j <= A.l; ++j) {
            auto one = word_equal(A, "T" + std::to_string(i + 1) + "T" + std::to_string(j + 1),
                                  compose(T[static_cast<size_t>(i)], T[static_cast<size_t>(j)]),
                                  compose(T[static_cast<size_t>(j)], T[static_cast<size_t>(i)]));
            out.insert(out.end(), one.begin(), one.end());
        }
    return out;
}

std::vector<Identity> translation_product_identities(const AlgebraSpec& A)
{
    Substitution prod_all; // T_1 T_2 ... T_{l+1}, rightmost acts first
    for (int i = A.l + 1; i >= 1; --i)
        prod_all = compose(weyl_word(A, translation_word(i, A.l)), prod_all);
    return word_equal(A, "T1...T" + std::to_string(A.l + 1), prod_all, Substitution{});
}

std::vector<Identity> translation_alpha_identities(const AlgebraSpec& A)
{
    std::vector<Identity> out;
    for (int i = 1; i <= A.l + 1; ++i) {
        auto Ti = weyl_word(A, translation_word(i, A.l));
        for (int j = 0; j <= A.l; ++j) {
            ExprPtr expect = gen(A.asym(j));
            if (j == cyclic(i - 1, A.l))
                expect = sum({expect, gen("k")});
            else if (j == cyclic(i, A.l))
                expect = sub(expect, gen("k"));
            out.push_back({"T" + std::to_string(i) + "(" + A.asym(j) + ")", &A,
                           Ti(A.asym(j)), expect});
        }
    }
    return out;
}

std::vector<Identity> discrete_system_l2_identities(const AlgebraSpec& A)
{
    if (A.l != 2)
        throw BadAlgebra("the explicit one-step map is the l = 2 one");
    auto T1 = weyl_word(A, translation_word(1, 2));
    auto a0_over_f0 = prod({gen("alpha0"), inverse(gen("f0"))});
    auto dentail = sub(gen("f2"), a0_over_f0);
    std::vector<Identity> out;
    out.push_back({"f0[1]", &A, T1("f0"),
                   sum({gen("f1"), a0_over_f0,
                        neg(prod({sum({gen("alpha2"), gen("alpha0")}), inverse(dentail)}))})});
    out.push_back({"f1[1]", &A, T1("f1"), dentail});
    out.push_back({"f2[1]", &A, T1("f2"),
                   sum({gen("f0"), prod({sum({gen("alpha2"), gen("alpha0")}), inverse(dentail)})})});
    // the central sum is preserved step by step
    auto s = sum({gen("f0"), gen("f1"), gen("f2")});
    out.push_back({"f0[1]+f1[1]+f2[1]", &A, T1(s), s});
    return out;
}

std::vector<Identity> translation_invariant_identities(const AlgebraSpec& A)
{
    auto T1 = weyl_word(A, translation_word(1, A.l));
    std::vector<Identity> out;
    if (A.l % 2 == 0) {
        out.push_back({"T1(x)=x", &A, T1(A.gens.at("x")), A.gens.at("x")});
        return out;
    }
    if (A.l < 3)
        return out;
    // the parity sums are W-invariant, but the rotation inside T_1 swaps
    // them; both are pinned to the same constant downstream, so the swap is
    // what the limit construction actually needs
    for (int i = 0; i <= A.l; ++i) {
        auto s = weyl_s(A, i);
        out.push_back({"s" + std::to_string(i) + "(x0)=x0", &A, s(A.gens.at("x0")), A.gens.at("x0")});
        out.push_back({"s" + std::to_string(i) + "(x1)=x1", &A, s(A.gens.at("x1")), A.gens.at("x1")});
    }
    out.push_back({"T1(x0)=x1", &A, T1(A.gens.at("x0")), A.gens.at("x1")});
    out.push_back({"T1(x1)=x0", &A, T1(A.gens.at("x1")), A.gens.at("x0")});
    return out;
}

std::vector<Identity> discrete_symmetry_identities(const AlgebraSpec& A)
{
    const int l = A.l;
    if (l < 2)
        throw BadAlgebra("the residual symmetry needs l >= 2");
    std::vector<Substitution> r;
    r.push_back(weyl_word(A, {"s0", "s1", "s0"}));
    for (int j = 2; j <= l; ++j)
        r.push_back(weyl_s(A, j));
    auto T1 = weyl_word(A, translation_word(1, l));

    std::vector<Identity> out;
    for (size_t j = 0; j < r.size(); ++j) {
        auto one = word_equal(A, "r" + std::to_string(j) + " T1", compose(r[j], T1),
                              compose(T1, r[j]));
        out.insert(out.end(), one.begin(), one.end());
    }
    // A_{l-1}^(1) Coxeter relations for the r_j (indices mod l)
    const int m = l - 1;
    for (size_t j = 0; j < r.size(); ++j) {
        auto one = word_equal(A, "r" + std::to_string(j) + "^2", compose(r[j], r[j]),
                              Substitution{});
        out.insert(out.end(), one.begin(), one.end());
    }
    if (m >= 2)
        for (int j = 0; j <= m; ++j) {
            auto &a = r[static_cast<size_t>(j)], &b = r[static_cast<size_t>(cyclic(j + 1, m))];
            auto braid = word_equal(A,
                                    "braid r" + std::to_string(j) + " r" +
                                        std::to_string(cyclic(j + 1, m)),
                                    compose(a, compose(b, compose(a, compose(b, compose(a, b))))),
                                    Substitution{});
            out.insert(out.end(), braid.begin(), braid.end());
        }
    if (m >= 3)
        for (int j = 0; j <= m; ++j)
            for (int j2 = j + 2; j2 <= m; ++j2) {
                if (cyclic(j2 - j, m) == m)
                    continue;
                auto commute = word_equal(A, "r" + std::to_string(j) + " r" + std::to_string(j2),
                                          compose(r[static_cast<size_t>(j)], r[static_cast<size_t>(j2)]),
                                          compose(r[static_cast<size_t>(j2)], r[static_cast<size_t>(j)]));
                out.insert(out.end(), commute.begin(), commute.end());
            }
    return out;
}

std::vector<std::string> discrete_trajectory(const AlgebraSpec& A, const TrajectoryOptions& opt)
{
    // one-step images as fixed trees
    auto T1 = weyl_word(A, translation_word(1, A.l));
    std::vector<std::string> names = weyl_generators(A);
    std::vector<ExprPtr> step_tree;
    for (auto& g : names)
        step_tree.push_back(T1(g));

    for (int attempt = 0; attempt < 16; ++attempt) {
        JetSpace sp(A.model.ncoords(), opt.k_order, opt.prime);
        Rng rng(opt.seed + static_cast<uint64_t>(attempt) * 0x9e3779b97f4a7c15ULL);
        auto pt = ModularPoint::sample(A.symbols.size(), opt.prime, rng.next());
        try {
            std::vector<std::string> lines;
            // state: generator -> current jet element
            std::map<std::string, StarElem<Jet>> state;
            {
                Evaluator<JetCtx> ev(A, JetCtx{&A.model, &sp, &pt});
                for (auto& g : names)
                    state[g] = ev.generator(g);
            }
            auto emit = [&](int n) {
                std::ostringstream os;
                os << "{\"n\":" << n << ",\"prime\":\"" << opt.prime << "\",\"state\":{";
                bool first = true;
                for (auto& g : names) {
                    os << (first ? "" : ",") << "\"" << g << "\":[";
                    first = false;
                    for (size_t k = 0; k < state[g].c.size(); ++k)
                        os << (k ? "," : "") << "\"" << state[g].c[k].value() << "\"";
                    os << "]";
                }
                os << "}}";
                lines.push_back(os.str());
            };
            emit(0);
            for (int n = 1; n <= opt.steps; ++n) {
                // evaluate the one-step trees on the current numeric state
                Evaluator<JetCtx> ev(A, JetCtx{&A.model, &sp, &pt});
                std::map<std::string, ExprPtr> img;
                std::map<std::string, StarElem<Jet>> next;
                // substitute by evaluating trees whose generator leaves read
                // the stored state: wrap via a custom resolution pass
                struct StateCtx {
                    Evaluator<JetCtx>& ev;
                    std::map<std::string, StarElem<Jet>>& st;
                    const AlgebraSpec& A;
                    StarElem<Jet> eval(const ExprPtr& e)
                    {
                        switch (e->kind) {
                        case Expr::Kind::Gen: {
                            auto it = st.find(e->name);
                            if (it != st.end())
                                return it->second;
                            return ev(gen(e->name)); // centrals, h, k, ...
                        }
                        case Expr::Kind::Scalar:
                            return star_scalar(ev.ctx(), e->value);
                        case Expr::Kind::Sum: {
                            auto acc = star_zero(ev.ctx());
                            for (auto& k : e->kids)
                                acc = star_add(ev.ctx(), acc, eval(k));
                            return acc;
                        }
                        case Expr::Kind::Prod: {
                            auto acc = star_scalar(ev.ctx(), Rational(1));
                            for (auto& k : e->kids)
                                acc = star_mul(ev.ctx(), acc, eval(k));
                            return acc;
                        }
                        case Expr::Kind::Inv:
                            return star_inv(ev.ctx(), eval(e->kids[0]));
                        case Expr::Kind::Pow: {
                            auto base = eval(e->kids[0]);
                            auto acc = star_scalar(ev.ctx(), Rational(1));
                            for (int i = 0; i < e->exponent; ++i)
                                acc = star_mul(ev.ctx(), acc, base);
                            return acc;
                        }
                        }
                        throw ModelError("unreachable");
                    }
                } sctx{ev, state, A};
                for (size_t gi = 0; gi < names.size(); ++gi)
                    next[names[gi]] = sctx.eval(step_tree[gi]);
                state = std::move(next);
                emit(n);
            }
            return lines;
        } catch (const BadPoint&) {
            continue;
        } catch (const NotInvertible&) {
            continue;
        }
    }
    throw BadPoint("no admissible trajectory seed found");
}

} // namespace qp
