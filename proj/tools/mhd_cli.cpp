#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mhd/fixtures.hpp"

using namespace mhd;

namespace {

constexpr const char* kVersion = "mhd 1.0.0";

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << text;
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty())
        std::cout << text;
    else
        write_file(path, text);
}

struct Options {
    bool json = false;
    bool banner = true;
    int workers = 1;
    EnumerationBudget budget;
};

void add_common(CLI::App* cmd, Options& opt) {
    cmd->add_flag("--json", opt.json, "emit the report as JSON");
    cmd->add_flag("!--no-banner", opt.banner, "suppress the version banner");
    cmd->add_option("--workers", opt.workers, "worker threads for enumeration")
        ->check(CLI::Range(1, 64));
    cmd->add_option("--budget-nodes", opt.budget.max_nodes, "search node cap");
    cmd->add_option("--budget-seconds", opt.budget.max_seconds, "search wall-clock cap");
}

int finish(const VerificationReport& rep, const Options& opt) {
    if (opt.banner) std::cerr << kVersion << "\n";
    std::cout << emit_report(rep, opt.json);
    return exit_code_for(rep.status);
}

std::string describe_space(const ProductSpace& space) {
    std::string out;
    for (int s = 0; s < space.components(); ++s) {
        if (s) out += "x";
        out += std::to_string(space.size(s));
    }
    return out;
}

int cmd_domain_check(const std::string& path, const std::string& thresholds_str,
                     const std::string& graph_path, const Options& opt) {
    auto ld = parse_domain(read_file(path));
    const auto& d = ld.domain;
    VerificationReport rep;
    rep.claim = "domain properties";
    rep.scope = std::to_string(d.size()) + " preferences over " + describe_space(d.space);
    auto minimal = check_minimal_richness(d);
    auto diversity = check_diversity_plus(d);
    auto interior = check_interior_plus(d);
    auto exterior = check_exterior_plus(d);
    rep.counts["minimally_rich"] = minimal.ok;
    rep.counts["diversity_plus"] = diversity.ok;
    rep.counts["interior_plus"] = interior.ok;
    rep.counts["exterior_plus"] = exterior.ok;
    rep.counts["rich"] = minimal.ok && diversity.ok && interior.ok && exterior.ok;
    for (const auto* c : {&minimal, &diversity, &interior, &exterior})
        if (!c->ok) rep.witnesses.push_back(c->witness);
    for (int s = 0; s < d.space.components(); ++s)
        rep.counts["induced_marginals_component_" + std::to_string(s + 1)] =
            static_cast<long long>(induced_marginal_domain(d, s).size());
    std::optional<Thresholds> t;
    if (!thresholds_str.empty()) {
        t = parse_thresholds(thresholds_str, ld);
        bool all_hybrid = true;
        for (const auto& p : d.prefs)
            if (!is_mh_preference(d.space, p, *t)) all_hybrid = false;
        rep.counts["all_hybrid_for_given_thresholds"] = all_hybrid;
    }
    auto found = is_mh_domain(d);
    rep.counts["hybrid_domain"] = found.has_value();
    if (found)
        rep.witnesses.push_back("hybrid domain thresholds: " +
                                serialize_thresholds(*found, ld));
    rep.status = found ? Status::Verified : Status::Refuted;
    if (!found) rep.witnesses.push_back("no thresholds make every preference hybrid");
    if (!graph_path.empty()) write_file(graph_path, graph_edge_list(build_pref_graph(d), 1));
    return finish(rep, opt);
}

int cmd_domain_gen(const std::string& kind, const std::string& sizes_str,
                   const std::string& thresholds_str, int guard, const std::string& out,
                   const Options& opt) {
    std::vector<int> sizes;
    for (const auto& tok : CLI::detail::split(sizes_str, 'x')) sizes.push_back(std::stoi(tok));
    ProductSpace space(sizes);
    std::optional<Domain> d;
    if (kind == "universal") d = gen_universal(space, guard);
    else if (kind == "msp") d = gen_msp_domain(space, guard);
    else if (kind == "top-separable") d = gen_top_separable_domain(space, guard);
    else if (kind == "separable") d = gen_separable_domain(space, guard);
    else if (kind == "mh") {
        LabeledDomain probe{Domain(space, {}), {}};
        Thresholds t = thresholds_str.empty() ? degenerate_thresholds(space)
                                              : parse_thresholds(thresholds_str, probe);
        d = gen_mh_domain(space, t, guard);
    } else {
        throw InputError("unknown generator '" + kind + "'");
    }
    if (opt.banner) std::cerr << kVersion << "\n";
    write_output(out, serialize_domain({*d, {}}));
    return 0;
}

int cmd_enum_fbr(const std::string& path, int s, int n, const std::string& thresholds_str,
                 const Options& opt) {
    auto ld = parse_domain(read_file(path));
    if (s < 1 || s > ld.domain.space.components())
        throw InputError("component index out of range");
    std::optional<std::pair<int, int>> constrained;
    if (!thresholds_str.empty()) {
        auto t = parse_thresholds(thresholds_str, ld);
        if (t.lower[s - 1] != t.upper[s - 1]) constrained = {t.lower[s - 1], t.upper[s - 1]};
    }
    auto fbrs = enum_fbrs(ld.domain.space.size(s - 1), s - 1, n, constrained);
    if (opt.banner) std::cerr << kVersion << "\n";
    std::cout << "COUNT fbrs: " << fbrs.size() << "\n";
    for (const auto& f : fbrs) std::cout << serialize_fbr(f);
    return 0;
}

int cmd_enum_sp(const std::string& path, int n, bool tops_only, int marginal_s,
                const Options& opt) {
    auto ld = parse_domain(read_file(path));
    VerificationReport rep;
    rep.scope = "n=" + std::to_string(n) + ", " + std::to_string(ld.domain.size()) +
                " preferences over " + describe_space(ld.domain.space);
    if (marginal_s > 0) {
        auto ds = induced_marginal_domain(ld.domain, marginal_s - 1);
        auto res = enum_sp_marginal_rules(ds, n, opt.budget, opt.workers);
        rep.claim = "unanimous strategy-proof marginal rules";
        rep.status = res.status;
        rep.counts["nodes"] = res.nodes;
        rep.counts["rules"] = static_cast<long long>(res.rules.size());
    } else {
        auto res = enum_sp_rules(ld.domain, n, tops_only ? EnumMode::TopsOnly : EnumMode::Full,
                                 opt.budget, opt.workers);
        rep.claim = "unanimous strategy-proof rules";
        rep.status = res.status;
        rep.counts["nodes"] = res.nodes;
        rep.counts["rules"] = static_cast<long long>(res.rules.size());
    }
    return finish(rep, opt);
}

int cmd_rules_check(const std::string& rule_path, const std::string& domain_path,
                    const Options& opt) {
    auto ld = parse_domain(read_file(domain_path));
    auto [f, name] = parse_scf(read_file(rule_path), ld);
    VerificationReport rep;
    rep.claim = "rule axioms";
    rep.scope = "n=" + std::to_string(f.n) + ", " + std::to_string(ld.domain.size()) +
                " preferences over " + describe_space(ld.domain.space);
    rep.counts["unanimous"] = is_unanimous(f, ld.domain);
    rep.counts["tops_only"] = is_tops_only(f, ld.domain);
    auto w = find_manipulation(f, ld.domain);
    rep.counts["strategy_proof"] = !w.has_value();
    if (w) {
        std::ostringstream os;
        os << "voter " << w->voter + 1 << " at profile (";
        for (size_t i = 0; i < w->profile.size(); ++i) os << (i ? "," : "") << w->profile[i] + 1;
        os << ") gains by reporting " << w->misreport + 1 << ": "
           << ld.alt_label(w->sincere_outcome) << " -> " << ld.alt_label(w->misreport_outcome);
        rep.witnesses.push_back(os.str());
    }
    rep.status =
        (!w && rep.counts["unanimous"]) ? Status::Verified : Status::Refuted;
    return finish(rep, opt);
}

int cmd_rules_assemble(const std::string& domain_path, const std::vector<std::string>& fbr_paths,
                       int n, const std::string& out, const Options& opt) {
    auto ld = parse_domain(read_file(domain_path));
    const int m = ld.domain.space.components();
    if (static_cast<int>(fbr_paths.size()) != m)
        throw InputError("need one ballot file per component");
    std::vector<MarginalScf> marginals;
    for (int s = 0; s < m; ++s) {
        Fbr f = parse_fbr(read_file(fbr_paths[s]));
        if (f.component != s) throw InputError("ballot file order must follow components");
        if (f.n != n) throw InputError("ballot voter count does not match n");
        if (!validate_fbr(f, ld.domain.space.size(s)))
            throw InputError("invalid ballots for component " + std::to_string(s + 1));
        marginals.push_back(fbr_to_marginal_scf(f, induced_marginal_domain(ld.domain, s)));
    }
    Scf f = assemble(marginals, ld.domain);
    if (opt.banner) std::cerr << kVersion << "\n";
    write_output(out, serialize_scf(f, ld, domain_path));
    return 0;
}

int cmd_rules_decompose(const std::string& rule_path, const std::string& domain_path,
                        const Options& opt) {
    auto ld = parse_domain(read_file(domain_path));
    auto [f, name] = parse_scf(read_file(rule_path), ld);
    auto dec = decompose(f, ld.domain);
    VerificationReport rep;
    rep.claim = "rule decomposes into component marginal rules";
    rep.scope = "n=" + std::to_string(f.n) + ", " + std::to_string(ld.domain.size()) +
                " preferences over " + describe_space(ld.domain.space);
    if (dec.ok) {
        rep.status = Status::Verified;
        for (const auto& g : dec.marginals) {
            rep.counts["component_" + std::to_string(g.component + 1) + "_strategy_proof"] =
                is_strategy_proof(g);
        }
    } else {
        rep.status = Status::Refuted;
        std::ostringstream os;
        os << "component " << dec.component + 1 << " outcome differs between profiles (";
        for (size_t i = 0; i < dec.profile_a.size(); ++i)
            os << (i ? "," : "") << dec.profile_a[i] + 1;
        os << ") and (";
        for (size_t i = 0; i < dec.profile_b.size(); ++i)
            os << (i ? "," : "") << dec.profile_b[i] + 1;
        os << ") that agree on every voter's component peak";
        rep.witnesses.push_back(os.str());
    }
    return finish(rep, opt);
}

Thresholds require_thresholds(const LabeledDomain& ld, const std::string& thresholds_str) {
    if (!thresholds_str.empty()) return parse_thresholds(thresholds_str, ld);
    auto t = is_mh_domain(ld.domain);
    if (!t) throw InputError("domain is not hybrid; pass --thresholds explicitly");
    return *t;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multidimensional hybrid domains and fixed ballot rules"};
    app.require_subcommand(1);
    Options opt;
    if (const char* env = std::getenv("MHD_BUDGET_NODES")) opt.budget.max_nodes = std::atoll(env);
    if (const char* env = std::getenv("MHD_BUDGET_SECONDS"))
        opt.budget.max_seconds = std::atof(env);

    std::string domain_path, rule_path, thresholds_str, graph_path, out_path, gen_kind,
        sizes_str;
    std::vector<std::string> fbr_paths;
    int s = 1, n = 2, guard = kDefaultAltGuard, marginal_s = 0;
    bool tops_only = false;

    auto* domain = app.add_subcommand("domain", "domain inspection and generation");
    auto* dcheck = domain->add_subcommand("check", "richness and hybridness report");
    dcheck->add_option("file", domain_path)->required();
    dcheck->add_option("--thresholds", thresholds_str, "lower:upper tuples");
    dcheck->add_option("--export-graph", graph_path, "write the preference graph edge list");
    add_common(dcheck, opt);

    auto* dgen = domain->add_subcommand("gen", "generate a domain by filtering all orders");
    dgen->add_option("kind", gen_kind, "universal|mh|msp|top-separable|separable")->required();
    dgen->add_option("sizes", sizes_str, "component sizes, e.g. 3x2")->required();
    dgen->add_option("--thresholds", thresholds_str);
    dgen->add_option("--guard", guard, "alternative-count cap for enumeration");
    dgen->add_option("-o,--output", out_path);
    add_common(dgen, opt);

    auto* rules = app.add_subcommand("rules", "rule enumeration and checks");
    auto* renumfbr = rules->add_subcommand("enum-fbr", "enumerate ballot families");
    renumfbr->add_option("file", domain_path)->required();
    renumfbr->add_option("-s,--component", s)->required();
    renumfbr->add_option("-n,--voters", n)->required();
    renumfbr->add_option("--thresholds", thresholds_str,
                         "restrict to constrained dictatorships where thresholds differ");
    add_common(renumfbr, opt);

    auto* renumsp = rules->add_subcommand("enum-sp", "enumerate strategy-proof rules");
    renumsp->add_option("file", domain_path)->required();
    renumsp->add_option("-n,--voters", n)->required();
    renumsp->add_flag("--tops-only", tops_only, "enumerate peak tables and lift");
    renumsp->add_option("-s,--marginal", marginal_s,
                        "enumerate marginal rules for this component instead");
    add_common(renumsp, opt);

    auto* rcheck = rules->add_subcommand("check", "axiom report for a rule file");
    rcheck->add_option("file", rule_path)->required();
    rcheck->add_option("--domain", domain_path)->required();
    add_common(rcheck, opt);

    auto* rassemble = rules->add_subcommand("assemble", "assemble ballot files into a rule");
    rassemble->add_option("domain", domain_path)->required();
    rassemble->add_option("fbrs", fbr_paths, "one ballot file per component")->required();
    rassemble->add_option("-n,--voters", n)->required();
    rassemble->add_option("-o,--output", out_path);
    add_common(rassemble, opt);

    auto* rdecompose = rules->add_subcommand("decompose", "split a rule into marginal rules");
    rdecompose->add_option("file", rule_path)->required();
    rdecompose->add_option("--domain", domain_path)->required();
    add_common(rdecompose, opt);

    auto* verify = app.add_subcommand("verify", "enumeration-backed verification");
    auto* vprop1 = verify->add_subcommand("prop1", "marginal rules = ballot families");
    vprop1->add_option("file", domain_path)->required();
    vprop1->add_option("-s,--component", s)->required();
    vprop1->add_option("-n,--voters", n)->required();
    vprop1->add_option("--thresholds", thresholds_str);
    add_common(vprop1, opt);

    auto* vdefn1 = verify->add_subcommand("defn1", "decomposability equivalence");
    vdefn1->add_option("file", domain_path)->required();
    vdefn1->add_option("-n,--voters", n)->required();
    add_common(vdefn1, opt);

    auto* vtheorem = verify->add_subcommand("theorem", "hybridness matches decomposability");
    vtheorem->add_option("file", domain_path)->required();
    vtheorem->add_option("-n,--voters", n)->required();
    add_common(vtheorem, opt);

    try {
        app.parse(argc, argv);
        if (dcheck->parsed()) return cmd_domain_check(domain_path, thresholds_str, graph_path, opt);
        if (dgen->parsed())
            return cmd_domain_gen(gen_kind, sizes_str, thresholds_str, guard, out_path, opt);
        if (renumfbr->parsed()) return cmd_enum_fbr(domain_path, s, n, thresholds_str, opt);
        if (renumsp->parsed()) return cmd_enum_sp(domain_path, n, tops_only, marginal_s, opt);
        if (rcheck->parsed()) return cmd_rules_check(rule_path, domain_path, opt);
        if (rassemble->parsed())
            return cmd_rules_assemble(domain_path, fbr_paths, n, out_path, opt);
        if (rdecompose->parsed()) return cmd_rules_decompose(rule_path, domain_path, opt);
        if (vprop1->parsed()) {
            auto ld = parse_domain(read_file(domain_path));
            auto rep = verify_proposition1(ld.domain, require_thresholds(ld, thresholds_str),
                                           s - 1, n, opt.budget, opt.workers);
            return finish(rep, opt);
        }
        if (vdefn1->parsed()) {
            auto ld = parse_domain(read_file(domain_path));
            return finish(verify_decomposable_domain(ld.domain, n, opt.budget, opt.workers), opt);
        }
        if (vtheorem->parsed()) {
            auto ld = parse_domain(read_file(domain_path));
            return finish(verify_theorem(ld.domain, n, opt.budget, opt.workers), opt);
        }
        std::cerr << "unknown subcommand\n";
        return 2;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ResourceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
