// qpl: batch driver for the quantum Painleve verification suites.
//
//   qpl run --check <name|all> [--l 1..5] [--mode exact|modular] ...
//   qpl fixtures <verify|regenerate> [--fixtures-dir DIR]
//   qpl discrete trace [--l 2] [--steps 50] [--seed N]
//   qpl list

#include <CLI11.hpp>

#include "qp/climit.hpp"
#include "qp/discrete.hpp"
#include "qp/registry.hpp"

#include <future>
#include <iostream>

namespace {

std::vector<int> parse_l_range(const std::string& spec)
{
    std::vector<int> out;
    if (spec.empty())
        return out;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ',')) {
        auto dots = part.find("..");
        if (dots == std::string::npos) {
            out.push_back(std::stoi(part));
            continue;
        }
        int lo = std::stoi(part.substr(0, dots));
        int hi = std::stoi(part.substr(dots + 2));
        for (int l = lo; l <= hi; ++l)
            out.push_back(l);
    }
    return out;
}

void print_summary_line(const qp::CheckReport& r)
{
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.check << " l=" << r.l << " [" << r.mode
              << ", K=" << r.k_order << "] " << r.identities << " identities, " << r.wall_ms
              << " ms";
    if (!r.pass)
        std::cout << "  (" << r.failures.size() << " failures, first: " << r.failures.front()
                  << ")";
    std::cout << "\n";
    for (auto& n : r.notes)
        std::cout << "     note: " << n << "\n";
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exact verification suites for the quantum Painleve systems of type A_l"};
    app.require_subcommand(1);

    // run ------------------------------------------------------------------
    auto* run = app.add_subcommand("run", "run named check suites");
    std::vector<std::string> checks;
    std::string lspec, mode = "auto";
    int k_order = 3, eps_order = 3, trials = 3, jobs = 1;
    uint64_t prime = qp::kDefaultPrime, seed = 1;
    bool json = false, summary = false, classical = false;
    run->add_option("--check", checks, "check names (see `qpl list`) or 'all'")->required();
    run->add_option("--l", lspec, "l values, e.g. 3 or 1..5 or 2,4,6 (default: per check)");
    run->add_option("--h-order", k_order, "hbar truncation order K (0 = classical slice)");
    run->add_option("--eps-order", eps_order, "eps order E for the continuous limits");
    run->add_option("--mode", mode, "exact | modular | auto")->check(CLI::IsMember({"exact", "modular", "auto"}));
    run->add_option("--trials", trials, "modular trials per identity set");
    run->add_option("--prime", prime, "modulus for the modular oracle");
    run->add_option("--seed", seed, "master seed (reports are reproducible given it)");
    run->add_option("--jobs", jobs, "run (check, l) tasks concurrently");
    run->add_flag("--json", json, "emit one JSON report per line");
    run->add_flag("--summary", summary, "print a human-readable table");
    run->add_flag("--classical", classical, "assert only the hbar^0 slice");

    // fixtures -------------------------------------------------------------
    auto* fx = app.add_subcommand("fixtures", "verify or regenerate the H_0 fixtures");
    std::string fx_action;
    std::string fixtures_dir = "fixtures";
    int fx_order = 3;
    fx->add_option("action", fx_action, "verify | regenerate")
        ->required()
        ->check(CLI::IsMember({"verify", "regenerate"}));
    fx->add_option("--fixtures-dir", fixtures_dir, "fixture directory");
    fx->add_option("--h-order", fx_order, "hbar truncation order");

    // discrete trace ---------------------------------------------------4----
    auto* disc = app.add_subcommand("discrete", "discrete-system utilities");
    auto* trace = disc->add_subcommand("trace", "emit a modular trajectory as JSON lines");
    int tr_l = 2, tr_steps = 50, tr_order = 3;
    uint64_t tr_seed = 1, tr_prime = qp::kDefaultPrime;
    trace->add_option("--l", tr_l, "system size");
    trace->add_option("--steps", tr_steps, "iteration depth");
    trace->add_option("--seed", tr_seed, "seed");
    trace->add_option("--prime", tr_prime, "modulus");
    trace->add_option("--h-order", tr_order, "hbar truncation order");

    auto* list = app.add_subcommand("list", "list registered checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (list->parsed()) {
            for (auto& e : qp::check_registry()) {
                std::cout << e.name << "  [l:";
                for (size_t i = 0; i < e.default_ls.size(); ++i)
                    std::cout << (i ? "," : " ") << e.default_ls[i];
                std::cout << "; " << (e.default_mode == qp::RunOptions::Mode::Exact ? "exact" : "modular")
                          << "]\n    " << e.summary << "\n";
            }
            return 0;
        }

        if (fx->parsed()) {
            auto out = fx_action == "verify" ? qp::fixtures_verify(fixtures_dir, fx_order)
                                             : qp::fixtures_regenerate(fixtures_dir, fx_order);
            for (auto& d : out.detail)
                std::cout << d << "\n";
            return out.ok ? 0 : 1;
        }

        if (trace->parsed()) {
            auto A = qp::build_K(tr_l, tr_order);
            qp::TrajectoryOptions topt;
            topt.steps = tr_steps;
            topt.k_order = tr_order;
            topt.prime = tr_prime;
            topt.seed = tr_seed;
            for (auto& line : qp::discrete_trajectory(A, topt))
                std::cout << line << "\n";
            return 0;
        }

        // run
        qp::RunOptions opt;
        opt.k_order = classical || k_order == 0 ? std::max(1, k_order) : k_order;
        opt.classical = classical || k_order == 0;
        opt.eps_order = eps_order;
        opt.trials = trials;
        opt.prime = prime;
        opt.seed = seed;
        bool mode_overridden = mode != "auto";
        if (mode == "exact")
            opt.mode = qp::RunOptions::Mode::Exact;
        if (mode == "modular")
            opt.mode = qp::RunOptions::Mode::Modular;

        std::vector<std::string> names;
        for (auto& c : checks) { // each --check value may be a comma list
            std::stringstream ss(c);
            std::string part;
            while (std::getline(ss, part, ','))
                if (!part.empty())
                    names.push_back(part);
        }
        if (names.size() == 1 && names.front() == "all") {
            names.clear();
            for (auto& e : qp::check_registry())
                names.push_back(e.name);
        }
        auto ls = parse_l_range(lspec);

        // expand to (check, l) tasks with deterministic ordering
        struct Task {
            std::string name;
            int l;
        };
        std::vector<Task> tasks;
        for (auto& n : names) {
            const auto& entry = qp::find_check(n); // throws on unknown -> exit 2
            auto use = ls.empty() ? entry.default_ls : ls;
            for (int l : use)
                tasks.push_back({n, l});
        }

        std::vector<qp::CheckReport> reports(tasks.size());
        if (jobs <= 1) {
            for (size_t i = 0; i < tasks.size(); ++i)
                reports[i] = qp::run_named_check(tasks[i].name, {tasks[i].l}, opt, mode_overridden)
                                 .front();
        } else {
            std::vector<std::future<qp::CheckReport>> futs;
            for (auto& t : tasks)
                futs.push_back(std::async(std::launch::async, [&, t] {
                    return qp::run_named_check(t.name, {t.l}, opt, mode_overridden).front();
                }));
            for (size_t i = 0; i < futs.size(); ++i)
                reports[i] = futs[i].get();
        }

        bool all_pass = true;
        for (auto& r : reports) {
            all_pass = all_pass && r.pass;
            if (json)
                std::cout << r.to_json() << "\n";
            if (summary || !json)
                print_summary_line(r);
        }
        return all_pass ? 0 : 1;
    } catch (const qp::UnknownCheck& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
