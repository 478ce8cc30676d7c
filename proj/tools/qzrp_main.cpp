#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "qzrp/jsonio.hpp"
#include "qzrp/macdonald.hpp"
#include "qzrp/multiline.hpp"
#include "qzrp/observables.hpp"
#include "qzrp/parallel.hpp"
#include "qzrp/simulate.hpp"
#include "qzrp/verify.hpp"

namespace fs = std::filesystem;
using namespace qzrp;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "qzrp 1.0.0";

// Exit codes: 0 pass, 1 assertion failure, 2 budget exceeded, 3 usage.
enum ExitCode { kPass = 0, kFail = 1, kBudget = 2, kUsage = 3 };

struct RunContext {
    json manifest;
    json report;
    std::string out_dir;

    RunContext(const std::string& command, int argc, char** argv) {
        manifest["version"] = kVersion;
        manifest["command"] = command;
        json args = json::array();
        for (int i = 0; i < argc; ++i) args.push_back(argv[i]);
        manifest["argv"] = args;
    }

    void write_file(const std::string& name, const std::string& contents) {
        if (out_dir.empty()) throw ContractViolation("--out directory required for file outputs");
        fs::create_directories(out_dir);
        std::ofstream f(fs::path(out_dir) / name, std::ios::binary);
        f << contents;
        manifest["outputs"].push_back(name);
    }

    int finish(int code, const std::string& summary) {
        manifest["outcome"]["exit_code"] = code;
        manifest["outcome"]["summary"] = summary;
        json envelope;
        envelope["manifest"] = manifest;
        envelope["report"] = report;
        std::cout << envelope.dump(2) << "\n";
        if (!out_dir.empty()) {
            fs::create_directories(out_dir);
            std::ofstream f(fs::path(out_dir) / "manifest.json", std::ios::binary);
            f << manifest.dump(2) << "\n";
        }
        std::cerr << summary << "\n";
        return code;
    }
};

std::vector<BigRational> parse_x_list(const std::string& text, int n) {
    std::vector<BigRational> xs;
    std::stringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ','))
        if (!tok.empty()) xs.push_back(parse_rational(tok));
    if (static_cast<int>(xs.size()) != n)
        throw ContractViolation("expected " + std::to_string(n) + " site parameters");
    return xs;
}

json suite_report_json(const SuiteReport& rep) {
    json checks = json::array();
    for (const auto& c : rep.checks) {
        json item;
        item["name"] = c.name;
        item["checked"] = c.checked;
        item["pass"] = c.pass;
        if (!c.note.empty()) item["note"] = c.note;
        checks.push_back(std::move(item));
    }
    json out;
    out["checks"] = checks;
    out["pass"] = rep.pass();
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact-arithmetic laboratory for the quinv tableau chain and the mTAZRP"};
    app.require_subcommand(1);

    std::string shape_text, out_dir, x_text, t_text = "1/3", suite = "all";
    std::string what = "fillings", form = "tableaux", config_text, filling_text, sigma_text;
    int n = 2, species = 1, site = 1, ell = 1, paths = 10000, trials = 8, batches = 25;
    long long budget = -1;
    int jobs = 1;
    std::uint64_t seed = 20240601;
    double horizon = 100.0, t_num = 0.0;
    bool pretty = false, all_sigma = false, negative_control = false, allow_t = false;

    auto add_common = [&](CLI::App* cmd, bool need_shape = true) {
        if (need_shape) cmd->add_option("--shape", shape_text, "partition, e.g. 3,1,1")->required();
        cmd->add_option("--n", n, "number of sites")->required();
        cmd->add_option("--budget", budget, "state-space budget override");
        cmd->add_option("--out", out_dir, "output directory");
    };

    auto* enumerate_cmd = app.add_subcommand("enumerate", "list fillings or configurations");
    add_common(enumerate_cmd);
    enumerate_cmd->add_option("--what", what)->check(CLI::IsMember({"fillings", "configs"}));

    auto* macdonald_cmd = app.add_subcommand("macdonald", "modified Macdonald polynomial at q=1");
    add_common(macdonald_cmd);
    macdonald_cmd->add_option("--form", form)
        ->check(CLI::IsMember({"tableaux", "factorized"}));
    macdonald_cmd->add_flag("--pretty", pretty, "also print a human-readable form");
    macdonald_cmd->add_option("--jobs", jobs, "worker pool size for the tableau sum");

    auto* weights_cmd = app.add_subcommand("weights", "stationary weights of the mTAZRP");
    add_common(weights_cmd);
    weights_cmd->add_option("--config", config_text, "single configuration, e.g. '.|311|.'");

    auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    add_common(verify_cmd);
    verify_cmd->add_option("--suite", suite)
        ->check(CLI::IsMember({"balance", "updown", "quinvdiff", "lumping", "stationary",
                               "symmetry", "density", "current", "top", "multiline", "t0",
                               "irreducible", "all"}));
    verify_cmd->add_option("--x", x_text, "site parameters as exact fractions, e.g. 2,3,5");
    verify_cmd->add_option("--t", t_text, "t as an exact fraction, e.g. 1/3");
    verify_cmd->add_option("--jobs", jobs, "worker pool size");

    auto* simulate_cmd = app.add_subcommand("simulate", "continuous-time simulation");
    add_common(simulate_cmd);
    simulate_cmd->add_option("--x", x_text)->required();
    simulate_cmd->add_option("--t", t_num, "t >= 0 (decimal accepted)");
    simulate_cmd->add_option("--seed", seed);
    simulate_cmd->add_option("--horizon", horizon);
    simulate_cmd->add_option("--batches", batches);

    auto* conjecture_cmd = app.add_subcommand("conjecture", "gather conjecture evidence");
    conjecture_cmd->require_subcommand(1);
    auto* conj_compressed = conjecture_cmd->add_subcommand("compressed", "reduced partition function");
    add_common(conj_compressed);
    conj_compressed->add_option("--trials", trials);
    conj_compressed->add_option("--seed", seed);
    auto* conj_refined = conjecture_cmd->add_subcommand("refined", "refined extension identity");
    add_common(conj_refined);
    conj_refined->add_option("--sigma", sigma_text, "filling of the compressed shape");
    conj_refined->add_flag("--all-sigma", all_sigma);

    auto* multiline_cmd = app.add_subcommand("multiline", "multiline diagram of a filling");
    add_common(multiline_cmd);
    multiline_cmd->add_option("--filling", filling_text, "rows top to bottom, ';'-separated")
        ->required();

    auto* obs_cmd = app.add_subcommand("observables", "densities, currents, pathwise probes");
    obs_cmd->require_subcommand(1);
    auto* obs_density = obs_cmd->add_subcommand("density", "stationary species density");
    add_common(obs_density);
    obs_density->add_option("--species", species)->required();
    obs_density->add_option("--site", site)->required();
    obs_density->add_option("--x", x_text, "evaluate at exact parameters");
    obs_density->add_option("--t", t_text);
    auto* obs_current = obs_cmd->add_subcommand("current", "stationary species current");
    add_common(obs_current);
    obs_current->add_option("--species", species)->required();
    obs_current->add_option("--x", x_text);
    obs_current->add_option("--t", t_text);
    auto* obs_pathwise = obs_cmd->add_subcommand("pathwise", "t=0 pathwise symmetry probe");
    add_common(obs_pathwise);
    obs_pathwise->add_option("--ell", ell)->required();
    obs_pathwise->add_option("--x", x_text)->required();
    obs_pathwise->add_option("--t", t_text);
    obs_pathwise->add_option("--seed", seed);
    obs_pathwise->add_option("--horizon", horizon);
    obs_pathwise->add_option("--paths", paths);
    obs_pathwise->add_flag("--negative-control", negative_control,
                           "permute a head variable instead (expected to reject)");
    obs_pathwise->add_flag("--allow-positive-t", allow_t, "exploratory t>0 run");

    auto* export_cmd = app.add_subcommand("export", "write generator/stationary/weight files");
    add_common(export_cmd);
    export_cmd->add_option("--what", what)
        ->check(CLI::IsMember({"generator", "stationary", "weights"}));
    export_cmd->add_option("--x", x_text);
    export_cmd->add_option("--t", t_text);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kUsage;
    }

    CLI::App* sub = app.get_subcommands().front();
    std::string command = sub->get_name();
    if (command == "conjecture" || command == "observables")
        command += " " + sub->get_subcommands().front()->get_name();
    RunContext ctx(command, argc, argv);
    ctx.out_dir = out_dir;

    try {
        Partition lambda = shape_text.empty() ? Partition() : Partition::parse(shape_text);
        ctx.manifest["shape"] = lambda.str();
        ctx.manifest["n"] = n;
        ctx.manifest["budget"] = budget < 0 ? default_budget() : budget;
        ctx.manifest["jobs"] = jobs;

        if (sub == enumerate_cmd) {
            json items = json::array();
            if (what == "fillings") {
                check_budget(lambda, n, budget);
                auto dg = std::make_shared<Diagram>(lambda);
                for_each_filling(dg, n, [&](const Filling& f) { items.push_back(f.str()); });
            } else {
                for (const ZrpConfig& w : enumerate_configs(lambda, n)) items.push_back(w.str());
            }
            ctx.report["count"] = items.size();
            ctx.report["items"] = std::move(items);
            return ctx.finish(kPass, "enumerated " + std::to_string(ctx.report["count"].get<long>()) +
                                         " " + what);
        }

        if (sub == macdonald_cmd) {
            MacdonaldQ1 h = form == "tableaux" ? htilde_q1_tableaux(lambda, n, budget, jobs)
                                               : htilde_q1_factorized(lambda, n);
            ctx.report["form"] = form;
            ctx.report["poly"] = poly_to_json(h.poly);
            if (pretty) ctx.report["pretty"] = h.poly.pretty();
            return ctx.finish(kPass, "H~_(" + lambda.str() + ") computed (" + form + ")");
        }

        if (sub == weights_cmd) {
            if (!config_text.empty()) {
                ZrpConfig w = ZrpConfig::parse(config_text);
                LaurentPoly poly = tazrp_weight(lambda, n, w, budget);
                ctx.report["config"] = w.str();
                ctx.report["weight"] = poly_to_json(poly);
                ctx.report["pretty"] = poly.pretty();
            } else {
                json all = json::array();
                for (const auto& [w, poly] : all_tazrp_weights(lambda, n, budget)) {
                    json item;
                    item["config"] = w.str();
                    item["weight"] = poly_to_json(poly);
                    all.push_back(std::move(item));
                }
                ctx.report["weights"] = std::move(all);
                ctx.report["partition_function"] = poly_to_json(zrp_partition_function(lambda, n));
            }
            return ctx.finish(kPass, "weights computed");
        }

        if (sub == verify_cmd) {
            ZrpParams params = x_text.empty()
                                   ? default_params(n)
                                   : ZrpParams(parse_x_list(x_text, n), parse_rational(t_text));
            ctx.manifest["x"] = x_text.empty() ? "default" : x_text;
            ctx.manifest["t"] = t_text;
            SuiteReport rep;
            if (suite == "all" && jobs > 1) {
                std::vector<std::string> names{"balance",  "updown", "quinvdiff", "lumping",
                                               "stationary", "symmetry", "density", "current",
                                               "top",      "multiline", "t0", "irreducible"};
                auto parts = parallel_map<std::string, SuiteReport>(
                    names,
                    [&](const std::string& s) { return run_suite(s, lambda, n, &params, budget); },
                    jobs);
                for (const auto& part : parts) rep.merge(part);
            } else {
                rep = run_suite(suite, lambda, n, &params, budget);
            }
            ctx.report = suite_report_json(rep);
            for (const auto& c : rep.checks)
                std::cerr << (c.pass ? "pass" : "FAIL") << "  " << c.name << "  (" << c.checked
                          << " checked)" << (c.note.empty() ? "" : "  [" + c.note + "]") << "\n";
            return ctx.finish(rep.pass() ? kPass : kFail,
                              std::string("suite ") + suite + (rep.pass() ? " passed" : " FAILED"));
        }

        if (sub == simulate_cmd) {
            std::vector<BigRational> xs = parse_x_list(x_text, n);
            if (t_num < 0) throw ContractViolation("t must be nonnegative");
            ctx.manifest["x"] = x_text;
            ctx.manifest["t"] = t_num;
            ctx.manifest["seed"] = seed;
            ctx.manifest["horizon"] = horizon;

            // Decimal t is carried as an exact rational so the side-by-side
            // predictions evaluate at the same point the sampler uses.
            ZrpParams sim_params(xs, BigRational(static_cast<long long>(t_num * 1000000), 1000000));
            SimulationReport rep = simulate_report(lambda, n, sim_params, seed, horizon, batches);

            // Exact predictions side by side.
            Partition lc = lambda.compressed();
            auto vm = lambda.value_multiplicities();
            json rows = json::array();
            std::string csv = "kind,site,species,estimate,se,exact\n";
            for (const auto& [key, est] : rep.density) {
                auto [st, sp] = key;
                int label = 0;
                for (std::size_t i = 0; i < vm.size(); ++i)
                    if (vm[i].first == sp) label = static_cast<int>(i) + 1;
                double exact = static_cast<double>(
                    density_formula(lc, n, label, st).evaluate(sim_params.x, sim_params.t));
                json row;
                row["kind"] = "density";
                row["site"] = st;
                row["species"] = sp;
                row["estimate"] = est.mean;
                row["se"] = est.se;
                row["exact"] = exact;
                rows.push_back(row);
                csv += "density," + std::to_string(st) + "," + std::to_string(sp) + "," +
                       std::to_string(est.mean) + "," + std::to_string(est.se) + "," +
                       std::to_string(exact) + "\n";
            }
            for (const auto& [sp, est] : rep.current) {
                int label = 0;
                for (std::size_t i = 0; i < vm.size(); ++i)
                    if (vm[i].first == sp) label = static_cast<int>(i) + 1;
                double exact = static_cast<double>(
                    current_formula(lc, n, label).evaluate(sim_params.x, sim_params.t));
                json row;
                row["kind"] = "current";
                row["site"] = n;
                row["species"] = sp;
                row["estimate"] = est.mean;
                row["se"] = est.se;
                row["exact"] = exact;
                rows.push_back(row);
                csv += "current," + std::to_string(n) + "," + std::to_string(sp) + "," +
                       std::to_string(est.mean) + "," + std::to_string(est.se) + "," +
                       std::to_string(exact) + "\n";
            }
            ctx.report["events"] = rep.total_events;
            ctx.report["rows"] = rows;
            if (!out_dir.empty()) {
                ctx.write_file("simulation.csv", csv);
                // The raw event sequence; the stream matches the report run.
                Trajectory traj = simulate(lambda, n, sim_params, seed, horizon);
                std::string tcsv = "time,site,species\n";
                for (const Event& ev : traj.events)
                    tcsv += std::to_string(ev.time) + "," + std::to_string(ev.site) + "," +
                            std::to_string(ev.species) + "\n";
                ctx.write_file("trajectory.csv", tcsv);
            }
            return ctx.finish(kPass, "simulated " + std::to_string(rep.total_events) + " events");
        }

        if (sub->get_name() == "conjecture") {
            CLI::App* which = sub->get_subcommands().front();
            if (which == conj_compressed) {
                ConjectureEvidence ev =
                    check_conjecture_compressed(lambda, n, trials, seed, budget);
                ctx.manifest["seed"] = seed;
                ctx.report["instance"] = ev.instance;
                ctx.report["verdict"] = verdict_name(ev.gcd.verdict);
                ctx.report["detail"] = ev.gcd.detail;
                if (ev.gcd.witness) ctx.report["witness"] = poly_to_json(*ev.gcd.witness);
                return ctx.finish(ev.passed ? kPass : kFail,
                                  ev.instance + ": " + verdict_name(ev.gcd.verdict));
            }
            // refined
            json instances = json::array();
            bool all_ok = true;
            Partition lc = lambda.compressed();
            auto dgc = std::make_shared<Diagram>(lc);
            long count = 0;
            auto run_one = [&](const Filling& sigma_c) {
                bool ok = check_conjecture_refined(lambda, n, sigma_c, budget);
                json item;
                item["sigma"] = sigma_c.str();
                item["pass"] = ok;
                instances.push_back(std::move(item));
                all_ok &= ok;
                ++count;
            };
            if (all_sigma) {
                check_budget(lambda, n, budget);
                for_each_filling(dgc, n, run_one);
            } else if (!sigma_text.empty()) {
                run_one(parse_filling(sigma_text, n));
            } else {
                throw ContractViolation("refined conjecture needs --sigma or --all-sigma");
            }
            ctx.report["instances"] = std::move(instances);
            return ctx.finish(all_ok ? kPass : kFail,
                              "refined conjecture: " + std::to_string(count) + " instances, " +
                                  (all_ok ? "all verified" : "COUNTEREXAMPLE FOUND"));
        }

        if (sub == multiline_cmd) {
            Filling sigma = parse_filling(filling_text, n);
            if (!(sigma.shape() == lambda))
                throw ContractViolation("filling shape does not match --shape");
            MultilineDiagram m = to_multiline(sigma);
            ctx.report["diagram"] = m.str();
            ctx.report["weight"] =
                poly_to_json(lambda.is_strict() ? multiline_weight(m, n) : weight(sigma));
            if (lambda.is_strict()) {
                ctx.report["refusals"] = refusals(m, n);
                ctx.report["roundtrip"] = from_multiline(m, n) == sigma;
            }
            return ctx.finish(kPass, "multiline diagram computed");
        }

        if (sub->get_name() == "observables") {
            CLI::App* which = sub->get_subcommands().front();
            if (which == obs_density || which == obs_current) {
                Partition lc = lambda.compressed();
                auto vm = lambda.value_multiplicities();
                int label = 0;
                for (std::size_t i = 0; i < vm.size(); ++i)
                    if (vm[i].first == species) label = static_cast<int>(i) + 1;
                if (label == 0) throw ContractViolation("species not present in shape");
                RationalFunction rf = which == obs_density
                                          ? density_formula(lc, n, label, site)
                                          : current_formula(lc, n, label);
                ctx.report["num"] = poly_to_json(rf.num);
                ctx.report["den"] = poly_to_json(rf.den);
                if (!x_text.empty()) {
                    ZrpParams params(parse_x_list(x_text, n), parse_rational(t_text));
                    ctx.report["value"] = rational_str(rf.evaluate(params.x, params.t));
                }
                return ctx.finish(kPass, which == obs_density ? "density computed" : "current computed");
            }
            // pathwise probe
            ZrpParams params(parse_x_list(x_text, n), parse_rational(t_text));
            std::vector<int> perm;  // permutation of sites ell+1..n: reversal by default
            for (int v = n; v >= ell + 1; --v) perm.push_back(v);
            PathwiseReport rep;
            if (negative_control) {
                // Deliberately violate the hypotheses: compare against a run
                // with x_1 and x_n swapped.  A detectable difference is the
                // expected outcome for strongly asymmetric rates.
                std::vector<BigRational> xs = params.x;
                std::swap(xs[0], xs[n - 1]);
                ZrpParams bad(xs, params.t);
                ZrpConfig start;
                start.sites.assign(n, {});
                for (int p : lambda.parts) start.sites[0].push_back(p);
                std::vector<double> s1, s2;
                for (int i = 0; i < paths; ++i) {
                    Trajectory tr1 =
                        simulate(lambda, n, params, split_seed(seed, 1 + i), horizon, -1, &start);
                    Trajectory tr2 = simulate(lambda, n, bad, split_seed(seed, 1000003 + i),
                                              horizon, -1, &start);
                    s1.push_back(site_empty_fraction(tr1, n, horizon));
                    s2.push_back(site_empty_fraction(tr2, n, horizon));
                }
                rep.paths = paths;
                rep.horizon = horizon;
                rep.ks = ks_two_sample(s1, s2);
            } else {
                rep = pathwise_symmetry_mc(lambda, n, ell, perm, params, seed, horizon, paths,
                                           allow_t);
            }
            ctx.manifest["seed"] = seed;
            ctx.report["paths"] = rep.paths == 0 ? paths : rep.paths;
            ctx.report["statistic"] = rep.ks.statistic;
            ctx.report["threshold"] = rep.ks.threshold;
            ctx.report["reject"] = rep.ks.reject;
            ctx.report["exploratory"] = rep.exploratory;
            ctx.report["note"] =
                "two-sample Kolmogorov-Smirnov at alpha=0.001; statistical evidence, not proof";
            return ctx.finish(kPass, std::string("pathwise probe: ") +
                                         (rep.ks.reject ? "REJECTED" : "no rejection"));
        }

        if (sub == export_cmd) {
            if (out_dir.empty()) throw ContractViolation("export requires --out");
            if (what == "generator") {
                std::string lines;
                for (const Transition& tr : build_generator(lambda, n, budget))
                    lines += transition_to_json(tr).dump() + "\n";
                ctx.write_file("generator.jsonl", lines);
            } else if (what == "stationary") {
                ZrpParams params = x_text.empty()
                                       ? default_params(n)
                                       : ZrpParams(parse_x_list(x_text, n), parse_rational(t_text));
                std::string csv = "config,probability\n";
                for (const auto& [w, pi] : stationary_exact(lambda, n, params, budget))
                    csv += w.str() + "," + rational_str(pi) + "\n";
                ctx.write_file("stationary.csv", csv);
            } else {
                std::string csv = "config,weight\n";
                for (const auto& [w, poly] : all_tazrp_weights(lambda, n, budget))
                    csv += w.str() + ",\"" + poly.pretty() + "\"\n";
                ctx.write_file("weights.csv", csv);
            }
            return ctx.finish(kPass, "export written to " + out_dir);
        }

        return ctx.finish(kUsage, "unknown subcommand");
    } catch (const BudgetExceeded& e) {
        return ctx.finish(kBudget, e.what());
    } catch (const ContractViolation& e) {
        return ctx.finish(kUsage, std::string("usage error: ") + e.what());
    } catch (const std::exception& e) {
        return ctx.finish(kFail, std::string("error: ") + e.what());
    }
}
