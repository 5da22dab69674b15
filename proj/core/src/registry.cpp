#include "qp/registry.hpp"

#include "qp/climit.hpp"
#include "qp/discrete.hpp"
#include "qp/lax.hpp"
#include "qp/serialize.hpp"
#include "qp/weyl.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

namespace qp {

namespace {

using Runner = std::function<CheckReport(int, const RunOptions&)>;

CheckReport run_items(const std::string& name, int l, const std::vector<Identity>& items,
                      const RunOptions& opt, std::vector<std::string> notes = {})
{
    return run_identities(name, l, items, opt, std::move(notes));
}

std::vector<CheckEntry> make_registry()
{
    using M = RunOptions::Mode;
    std::vector<CheckEntry> reg;

    reg.push_back({"algebra.relations", "defining relations of the presented algebras",
                   {1, 2, 3, 4, 5, 6, 7}, M::Exact, false, [](int l, const RunOptions& opt) {
                       CheckReport rep;
                       auto t0 = std::chrono::steady_clock::now();
                       rep.check = "algebra.relations";
                       rep.l = l;
                       rep.mode = "exact";
                       rep.k_order = opt.k_order;
                       rep.seed = opt.seed;
                       rep.prime = opt.prime;
                       try {
                           auto K = build_K(l, opt.k_order);
                           rep.algebra = K.name;
                           auto devK = verify_relations(K);
                           for (auto& d : devK)
                               rep.notes.push_back(d);
                           if (l <= 6) {
                               auto A = build_A(l, opt.k_order);
                               rep.algebra += "+" + A.name;
                               for (auto& d : verify_relations(A))
                                   rep.notes.push_back(d);
                           }
                           if (l == 2 || (l % 2 == 1 && l >= 3)) {
                               auto F = build_F(l, opt.k_order);
                               rep.algebra += "+" + F.name;
                               for (auto& d : verify_relations(F))
                                   rep.notes.push_back(d);
                           }
                           rep.pass = true;
                       } catch (const std::exception& e) {
                           rep.pass = false;
                           rep.failures.push_back(e.what());
                       }
                       rep.wall_ms = static_cast<long>(
                           std::chrono::duration_cast<std::chrono::milliseconds>(
                               std::chrono::steady_clock::now() - t0)
                               .count());
                       return rep;
                   }});

    reg.push_back({"hamiltonian.fixtures", "built H_0 matches the stored canonical files",
                   {2, 3, 4, 5}, M::Exact, false, [](int l, const RunOptions& opt) {
                       CheckReport rep;
                       auto t0 = std::chrono::steady_clock::now();
                       rep.check = "hamiltonian.fixtures";
                       rep.l = l;
                       rep.algebra = "K_" + std::to_string(l);
                       rep.mode = "exact";
                       rep.k_order = opt.k_order;
                       rep.prime = opt.prime;
                       rep.seed = opt.seed;
                       std::ifstream in(opt.fixtures_dir + "/h0_l" + std::to_string(l) + ".json",
                                        std::ios::binary);
                       if (!in) {
                           rep.pass = false;
                           rep.failures.push_back("missing fixture in " + opt.fixtures_dir);
                       } else {
                           std::ostringstream ss;
                           ss << in.rdbuf();
                           rep.identities = 1;
                           rep.pass = ss.str() == fixture_h0_json(l, opt.k_order);
                           if (!rep.pass)
                               rep.failures.push_back("fixture differs from the built H_0");
                       }
                       rep.wall_ms = static_cast<long>(
                           std::chrono::duration_cast<std::chrono::milliseconds>(
                               std::chrono::steady_clock::now() - t0)
                               .count());
                       return rep;
                   }});

    reg.push_back({"hamiltonian.theorem1", "flows from H_0 equal the closed forms",
                   {1, 2, 3, 4, 5, 6, 7}, M::Exact, true, [](int l, const RunOptions& opt) {
                       auto A = build_K(l, opt.k_order);
                       return run_items("hamiltonian.theorem1", l, theorem1_identities(A), opt);
                   }});

    reg.push_back({"hamiltonian.conservation", "dependent-relations identities",
                   {1, 2, 3, 4, 5, 6, 7}, M::Exact, true, [](int l, const RunOptions& opt) {
                       auto A = build_K(l, opt.k_order);
                       auto items = conservation_identities(A);
                       return run_items("hamiltonian.conservation", l, items, opt);
                   }});

    reg.push_back({"hamiltonian.rescaled", "x0-rescaled flows (odd l), mod h^{K+1}",
                   {3, 5, 7}, M::Exact, false, [](int l, const RunOptions& opt) {
                       auto A = build_K(l, opt.k_order);
                       return run_items("hamiltonian.rescaled", l, rescaled_flow_identities(A), opt);
                   }});

    reg.push_back({"hamiltonian.heisenberg", "canonical coordinates and Heisenberg form",
                   {1, 2, 3, 4, 5}, M::Exact, false, [](int l, const RunOptions& opt) {
                       auto K = build_K(l, opt.k_order);
                       auto maps = canonical_map(K);
                       return run_items("hamiltonian.heisenberg", l, heisenberg_identities(K, maps),
                                        opt);
                   }});

    reg.push_back({"weyl.involution", "s_i^2 = 1 on every generator", {1, 2, 3, 4, 5},
                   M::Modular, false, [](int l, const RunOptions& opt) {
                       auto A = build_K(l, opt.k_order);
                       return run_items("weyl.involution", l, weyl_involution_identities(A), opt);
                   }});

    reg.push_back({"weyl.braid", "braid and commuting relations", {2, 3, 4, 5}, M::Modular,
                   false, [](int l, const RunOptions& opt) {
                       auto A = build_K(l, opt.k_order);
                       auto items = weyl_braid_identities(A);
                       auto more = weyl_commute_identities(A);
                       items.insert(items.end(), more.begin(), more.end());
                       std::vector<std::string> notes;
                       if (l == 1)
                           notes.push_back("skipped: the l=1 representation satisfies all relations except the braids");
                       return run_items("weyl.braid", l, items, opt, std::move(notes));
                   }});

    reg.push_back({"weyl.rotation", "pi^(l+1) = 1 and pi s_i = s_{i+1} pi", {1, 2, 3, 4, 5},
                   M::Modular, false, [](int l, const RunOptions& opt) {
                       auto A = build_K(l, opt.k_order);
                       return run_items("weyl.rotation", l, weyl_rotation_identities(A), opt);
                   }});

    reg.push_back({"weyl.h-transform", "s_i(H_j) - H_j transformation laws", {1, 2, 3, 4, 5},
                   M::Modular, false, [](int l, const RunOptions& opt) {
                       auto A = build_K(l, opt.k_order);
                       std::vector<Identity> items;
                       for (int j = 0; j <= l; ++j) {
                           auto one = h_transform_identities(A, j);
                           items.insert(items.end(), one.begin(), one.end());
                       }
                       return run_items("weyl.h-transform", l, items, opt);
                   }});

    reg.push_back({"weyl.equivariance", "the flow commutes with the extended Weyl action",
                   {1, 2, 3, 4}, M::Modular, false, [](int l, const RunOptions& opt) {
                       auto A = build_K(l, opt.k_order);
                       return run_items("weyl.equivariance", l, equivariance_identities(A), opt);
                   }});

    reg.push_back({"weyl.h-differences", "H_{j+1} - H_j closed forms / fitted coefficients",
                   {2, 3, 4, 5}, M::Exact, false, [](int l, const RunOptions& opt) {
                       auto A = build_K(l, opt.k_order);
                       if (l % 2 == 0) {
                           std::vector<Identity> items;
                           for (int j = 0; j <= l; ++j) {
                               auto one = h_difference_identities(A, j);
                               items.insert(items.end(), one.begin(), one.end());
                           }
                           return run_items("weyl.h-differences", l, items, opt);
                       }
                       CheckReport rep;
                       auto t0 = std::chrono::steady_clock::now();
                       rep.check = "weyl.h-differences";
                       rep.l = l;
                       rep.algebra = A.name;
                       rep.mode = "exact";
                       rep.k_order = opt.k_order;
                       rep.prime = opt.prime;
                       rep.seed = opt.seed;
                       rep.pass = true;
                       for (int j = 0; j <= l; ++j) {
                           auto fit = h_difference_fit_odd(A, j);
                           rep.identities += 1;
                           rep.notes.push_back(fit.detail);
                           if (!fit.shape_matches) {
                               rep.pass = false;
                               rep.failures.push_back("difference does not match the template at j=" +
                                                      std::to_string(j));
                           }
                       }
                       rep.wall_ms = static_cast<long>(
                           std::chrono::duration_cast<std::chrono::milliseconds>(
                               std::chrono::steady_clock::now() - t0)
                               .count());
                       return rep;
                   }});

    reg.push_back({"lax.residual", "[z dz + L, dt + B] = 0 with constructed u", {1, 2, 3, 4, 5, 6},
                   M::Exact, false, [](int l, const RunOptions& opt) {
                       auto A = build_A(l, opt.k_order);
                       std::vector<std::string> notes;
                       if (l % 2 == 1 && l >= 3)
                           notes.push_back(
                               "odd l: no star model satisfies this identically; the residual "
                               "equals -2h E_{l-1,l} (see lax.anomaly and the project notes)");
                       return run_items("lax.residual", l, lax_residual_identities(A), opt,
                                        std::move(notes));
                   }});

    reg.push_back({"lax.anomaly", "sharp odd-l residual: -2h at the f_l row", {3, 5},
                   M::Exact, false, [](int l, const RunOptions& opt) {
                       auto A = build_A(l, opt.k_order);
                       return run_items("lax.anomaly", l, lax_residual_anomaly_identities(A), opt);
                   }});

    reg.push_back({"lax.gauge", "gauge conjugation reproduces the Weyl action", {2, 3, 4},
                   M::Exact, false, [](int l, const RunOptions& opt) {
                       auto A = build_A(l, opt.k_order);
                       std::vector<Identity> items;
                       for (int i = 0; i <= l; ++i) {
                           auto one = lax_gauge_identities(A, "s" + std::to_string(i));
                           items.insert(items.end(), one.begin(), one.end());
                       }
                       auto pi = lax_gauge_identities(A, "pi");
                       items.insert(items.end(), pi.begin(), pi.end());
                       std::vector<std::string> notes;
                       if (l % 2 == 1)
                           notes.push_back("s_l leaves the documented 2h alpha_l/f_l^2 stray in w(B)");
                       return run_items("lax.gauge", l, items, opt, std::move(notes));
                   }});

    reg.push_back({"lax.odd-chain", "the odd-l elimination chain replayed", {3, 5}, M::Exact,
                   false, [](int l, const RunOptions& opt) {
                       auto A = build_A(l, opt.k_order);
                       std::vector<Identity> items = lax_odd_chain_identities(A);
                       auto more = lax_usolution_identities(A);
                       items.insert(items.end(), more.begin(), more.end());
                       return run_items("lax.odd-chain", l, items, opt);
                   }});

    reg.push_back({"discrete.translation", "T_i relations and the alpha lattice action",
                   {2, 3, 4}, M::Modular, false, [](int l, const RunOptions& opt) {
                       auto A = build_K(l, opt.k_order);
                       std::vector<Identity> items = translation_commute_identities(A);
                       for (auto& set : {translation_product_identities(A),
                                         translation_invariant_identities(A)})
                           items.insert(items.end(), set.begin(), set.end());
                       // the alpha action is linear; verify it exactly regardless of mode
                       RunOptions exact = opt;
                       exact.mode = RunOptions::Mode::Exact;
                       auto alpha = run_items("discrete.translation.alpha", l,
                                              translation_alpha_identities(A), exact);
                       auto rep = run_items("discrete.translation", l, items, opt);
                       rep.identities += alpha.identities;
                       if (!alpha.pass) {
                           rep.pass = false;
                           for (auto& f : alpha.failures)
                               rep.failures.push_back(f);
                       }
                       return rep;
                   }});

    reg.push_back({"discrete.system", "the standard l=2 one-step map", {2}, M::Exact, false,
                   [](int l, const RunOptions& opt) {
                       auto A = build_K(2, opt.k_order);
                       (void)l;
                       return run_items("discrete.system", 2, discrete_system_l2_identities(A), opt);
                   }});

    reg.push_back({"discrete.symmetry", "the residual A_{l-1} symmetry commutes with T_1",
                   {2, 3, 4}, M::Modular, false, [](int l, const RunOptions& opt) {
                       auto A = build_K(l, opt.k_order);
                       return run_items("discrete.symmetry", l, discrete_symmetry_identities(A), opt);
                   }});

    reg.push_back({"discrete.trajectory", "specialized-modular iteration to depth 50", {2, 3},
                   M::Modular, false, [](int l, const RunOptions& opt) {
                       CheckReport rep;
                       auto t0 = std::chrono::steady_clock::now();
                       rep.check = "discrete.trajectory";
                       rep.l = l;
                       rep.mode = "modular";
                       rep.k_order = opt.k_order;
                       rep.prime = opt.prime;
                       rep.seed = opt.seed;
                       try {
                           auto A = build_K(l, opt.k_order);
                           rep.algebra = A.name;
                           TrajectoryOptions topt;
                           topt.steps = 50;
                           topt.k_order = opt.k_order;
                           topt.prime = opt.prime;
                           topt.seed = opt.seed;
                           auto lines = discrete_trajectory(A, topt);
                           rep.identities = static_cast<int>(lines.size());
                           rep.pass = lines.size() == 51;
                       } catch (const std::exception& e) {
                           rep.pass = false;
                           rep.failures.push_back(e.what());
                       }
                       rep.wall_ms = static_cast<long>(
                           std::chrono::duration_cast<std::chrono::milliseconds>(
                               std::chrono::steady_clock::now() - t0)
                               .count());
                       return rep;
                   }});

    auto climit_entry = [&reg](const std::string& name, const std::string& summary,
                               std::vector<int> ls, RunOptions::Mode mode) {
        std::string bare = name.substr(std::string("climit.").size());
        reg.push_back({name, summary, std::move(ls), mode, false,
                       [bare](int l, const RunOptions& opt) { return run_climit(bare, l, opt); }});
    };
    climit_entry("climit.lemma-psi", "Psi preserves the K_l presentation", {2, 3, 5}, M::Exact);
    climit_entry("climit.partial1", "T_1 images are 1 + O(eps)", {2, 3, 5}, M::Exact);
    climit_entry("climit.intertwine", "Psi intertwines the T_1 parameter shift", {2, 3, 5},
                 M::Exact);
    climit_entry("climit.conind", "inductive eps-expansion of the shift words", {3, 5}, M::Exact);
    climit_entry("climit.concom", "the a/b coefficient recursion", {3, 5}, M::Exact);
    climit_entry("climit.theorem-a2n", "the limit is the A_{l-1} quantum system", {3, 5},
                 M::Exact);
    climit_entry("climit.qp2", "the quantum second Painleve equation", {2}, M::Exact);
    climit_entry("climit.equivariance", "r_i-equivariance of the limit derivation", {2, 3, 5},
                 M::Modular);

    return reg;
}

} // namespace

const std::vector<CheckEntry>& check_registry()
{
    static const std::vector<CheckEntry> reg = make_registry();
    return reg;
}

const CheckEntry& find_check(const std::string& name)
{
    for (auto& e : check_registry())
        if (e.name == name)
            return e;
    throw UnknownCheck(name);
}

std::vector<CheckReport> run_named_check(const std::string& name, std::vector<int> ls,
                                         RunOptions opt, bool mode_overridden)
{
    const auto& entry = find_check(name);
    if (!mode_overridden)
        opt.mode = entry.default_mode;
    if (opt.mode == RunOptions::Mode::Exact)
        opt.require_exact = entry.default_require_exact && !opt.classical;
    if (ls.empty())
        ls = entry.default_ls;
    std::vector<CheckReport> out;
    for (int l : ls) {
        try {
            out.push_back(entry.run(l, opt));
        } catch (const std::exception& e) {
            CheckReport rep;
            rep.check = name;
            rep.l = l;
            rep.mode = opt.mode_name();
            rep.k_order = opt.k_order;
            rep.pass = false;
            rep.failures.push_back(e.what());
            out.push_back(std::move(rep));
        }
    }
    return out;
}

std::string fixture_h0_json(int l, int order)
{
    auto A = build_K(l, order);
    auto ev = exact_evaluator(A);
    auto H = ev(hamiltonian_H0(A));
    return json_of_elem(A, H) + "\n";
}

namespace {

std::string fixture_path(const std::string& dir, int l)
{
    return dir + "/h0_l" + std::to_string(l) + ".json";
}

} // namespace

FixtureOutcome fixtures_verify(const std::string& dir, int order)
{
    FixtureOutcome out;
    for (int l : {2, 3, 4, 5}) {
        std::ifstream in(fixture_path(dir, l), std::ios::binary);
        if (!in) {
            out.ok = false;
            out.detail.push_back("missing fixture " + fixture_path(dir, l));
            continue;
        }
        std::ostringstream ss;
        ss << in.rdbuf();
        std::string stored = ss.str();
        std::string fresh = fixture_h0_json(l, order);
        if (stored == fresh) {
            out.detail.push_back("h0_l" + std::to_string(l) + ": ok");
            continue;
        }
        out.ok = false;
        size_t k = 0;
        while (k < std::min(stored.size(), fresh.size()) && stored[k] == fresh[k])
            ++k;
        auto excerpt = [&](const std::string& s) {
            size_t lo = k > 40 ? k - 40 : 0;
            return s.substr(lo, std::min<size_t>(90, s.size() - lo));
        };
        out.detail.push_back("h0_l" + std::to_string(l) + ": mismatch at byte " +
                             std::to_string(k) + "; stored ..." + excerpt(stored) +
                             "... vs built ..." + excerpt(fresh) + "...");
    }
    return out;
}

FixtureOutcome fixtures_regenerate(const std::string& dir, int order)
{
    FixtureOutcome out;
    for (int l : {2, 3, 4, 5}) {
        std::ofstream o(fixture_path(dir, l), std::ios::binary | std::ios::trunc);
        if (!o) {
            out.ok = false;
            out.detail.push_back("cannot write " + fixture_path(dir, l));
            continue;
        }
        o << fixture_h0_json(l, order);
        out.detail.push_back("wrote h0_l" + std::to_string(l) + ".json");
    }
    return out;
}

} // namespace qp
