#include "qp/check.hpp"
#include "qp/serialize.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <sstream>

namespace qp {

namespace {

uint64_t fnv1a(const std::string& s)
{
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

uint64_t mix_seed(uint64_t seed, const std::string& check, int l, int trial)
{
    Rng rng(seed ^ fnv1a(check) ^ (static_cast<uint64_t>(l) << 40) ^
            (static_cast<uint64_t>(trial) << 20));
    return rng.next();
}

std::string grade_residual_desc(const AlgebraSpec& A, const StarElem<RatFn>& r)
{
    std::ostringstream os;
    auto nm = [&](int s) { return A.symbols.name(s); };
    for (size_t k = 0; k < r.c.size(); ++k)
        if (!r.c[k].is_zero()) {
            os << " h^" << k << ": (" << r.c[k].num().str(nm) << ")";
            if (!r.c[k].is_polynomial())
                os << "/(" << r.c[k].den().str(nm) << ")";
        }
    return os.str();
}

} // namespace

std::string CheckReport::to_json(bool with_timing) const
{
    std::ostringstream os;
    os << "{\"check\":\"" << check << "\",\"l\":" << l << ",\"algebra\":\"" << algebra
       << "\",\"mode\":\"" << mode << "\",\"k_order\":" << k_order
       << ",\"eps_order\":" << eps_order << ",\"trials\":" << trials << ",\"prime\":\"" << prime
       << "\",\"seed\":" << seed << ",\"status\":\"" << (pass ? "pass" : "fail")
       << "\",\"identities\":" << identities << ",\"max_degree\":" << max_degree
       << ",\"sz_bound\":\"";
    std::ostringstream sb;
    sb.setf(std::ios::scientific);
    sb.precision(2);
    sb << sz_bound;
    os << sb.str() << "\",\"failures\":[";
    for (size_t i = 0; i < failures.size(); ++i) {
        std::string esc;
        for (char c : failures[i])
            esc += (c == '"' || c == '\\') ? std::string("\\") + c : std::string(1, c);
        os << (i ? "," : "") << "\"" << esc << "\"";
    }
    os << "],\"notes\":[";
    for (size_t i = 0; i < notes.size(); ++i) {
        std::string esc;
        for (char c : notes[i])
            esc += (c == '"' || c == '\\') ? std::string("\\") + c : std::string(1, c);
        os << (i ? "," : "") << "\"" << esc << "\"";
    }
    os << "]";
    if (!algebra_descriptor.empty())
        os << ",\"algebra_descriptor\":" << algebra_descriptor;
    if (with_timing)
        os << ",\"wall_ms\":" << wall_ms;
    os << "}";
    return os.str();
}

CheckReport run_identities(const std::string& check, int l, const std::vector<Identity>& items,
                           const RunOptions& opt, std::vector<std::string> notes)
{
    auto t0 = std::chrono::steady_clock::now();
    CheckReport rep;
    rep.check = check;
    rep.l = l;
    rep.mode = opt.mode_name();
    rep.k_order = opt.k_order;
    rep.eps_order = opt.eps_order;
    rep.trials = opt.mode == RunOptions::Mode::Modular ? opt.trials : 0;
    rep.prime = opt.prime;
    rep.seed = opt.seed;
    rep.identities = static_cast<int>(items.size());
    rep.notes = std::move(notes);

    {
        std::map<std::string, bool> seen;
        for (auto& it : items)
            if (it.A && !seen.count(it.A->name)) {
                seen[it.A->name] = true;
                rep.algebra += (rep.algebra.empty() ? "" : "+") + it.A->name;
                if (rep.algebra_descriptor.empty())
                    rep.algebra_descriptor = json_of_algebra(*it.A);
            }
    }

    auto is_ok = [&](const auto& ctx, const auto& residual) {
        return opt.classical ? star_is_zero_classical(ctx, residual) : star_is_zero(ctx, residual);
    };

    if (opt.mode == RunOptions::Mode::Exact) {
        std::map<const AlgebraSpec*, Evaluator<ExactCtx>> evs;
        for (const auto& item : items) {
            auto [it, fresh] = evs.try_emplace(item.A, *item.A, ExactCtx{&item.A->model});
            auto& ev = it->second;
            try {
                auto diff = star_sub(ev.ctx(), ev(item.lhs), ev(item.rhs));
                rep.max_degree = std::max(rep.max_degree, diff.deg_bound);
                if (!is_ok(ev.ctx(), diff))
                    rep.failures.push_back(item.label + ":" + grade_residual_desc(*item.A, diff));
                else if (opt.require_exact && !opt.classical && !diff.exact)
                    rep.failures.push_back(item.label + ": holds only modulo h^" +
                                           std::to_string(opt.k_order + 1));
            } catch (const std::exception& e) {
                rep.failures.push_back(item.label + ": " + e.what());
            }
        }
    } else {
        for (int trial = 0; trial < opt.trials; ++trial) {
            bool done = false;
            std::string last_err;
            for (int attempt = 0; attempt < 32 && !done; ++attempt) {
                uint64_t s = mix_seed(opt.seed, check, l, trial * 97 + attempt);
                std::map<const AlgebraSpec*, std::pair<JetSpace, ModularPoint>> pts;
                std::map<const AlgebraSpec*, Evaluator<JetCtx>> evs;
                try {
                    std::vector<std::string> fails;
                    for (const auto& item : items) {
                        auto pit = pts.find(item.A);
                        if (pit == pts.end())
                            pit = pts.emplace(item.A,
                                              std::make_pair(JetSpace(item.A->model.ncoords(),
                                                                      opt.k_order, opt.prime),
                                                             ModularPoint::sample(item.A->symbols.size(),
                                                                                  opt.prime, s)))
                                      .first;
                        auto eit = evs.find(item.A);
                        if (eit == evs.end())
                            eit = evs.emplace(item.A, Evaluator<JetCtx>(*item.A,
                                                  JetCtx{&item.A->model, &pit->second.first,
                                                         &pit->second.second}))
                                      .first;
                        auto& ev = eit->second;
                        auto diff = star_sub(ev.ctx(), ev(item.lhs), ev(item.rhs));
                        rep.max_degree = std::max(rep.max_degree, diff.deg_bound);
                        if (!is_ok(ev.ctx(), diff))
                            fails.push_back(item.label + " (trial " + std::to_string(trial) + ")");
                    }
                    for (auto& f : fails)
                        rep.failures.push_back(f);
                    done = true;
                } catch (const BadPoint& e) {
                    last_err = e.what();
                } catch (const NotInvertible& e) {
                    last_err = e.what();
                }
            }
            if (!done)
                rep.failures.push_back("trial " + std::to_string(trial) +
                                       ": no admissible evaluation point (" + last_err + ")");
        }
        double ratio = static_cast<double>(rep.max_degree) / static_cast<double>(opt.prime);
        rep.sz_bound = std::pow(ratio, opt.trials);
    }

    rep.pass = rep.failures.empty();
    rep.wall_ms = static_cast<long>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                        std::chrono::steady_clock::now() - t0)
                                        .count());
    return rep;
}

} // namespace qp
