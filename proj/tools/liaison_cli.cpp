// liaison: curves in P^3, their links, biliaisons and biliaison classes.

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "liaison.hpp"

using json = nlohmann::json;
using namespace liaison;

namespace {

enum Exit { kOk = 0, kNo = 1, kDomain = 2, kParse = 3, kUndecided = 4 };

struct Options {
    std::uint64_t seed = 1;
    int trials = 32;
    int margin = 2;
    int max_height = 4;
    bool json = false;
    bool dual = false;
    std::string out;
    std::string corpus_dir = LIAISON_CORPUS_DIR;
};

struct Report {
    std::string command;
    std::string digest_input;
    json results = json::object();
    std::vector<std::string> lines;
    int code = kOk;

    void say(const std::string& s) { lines.push_back(s); }
};

/// Summands R(a) of a free module, listed by a.
json summands(const FreeModule& F) {
    json a = json::array();
    for (int t : F.twists) a.push_back(-t);
    return a;
}

json dims_json(const std::map<int, int>& m) {
    json o = json::object();
    for (auto [n, d] : m) o[std::to_string(n)] = d;
    return o;
}

Ideal load(const std::string& path, const Options& opt, Report& rep) {
    std::string text = read_text(path);
    rep.digest_input += text;
    rep.digest_input.push_back('\0');
    CurveFile f = parse_curve_file(text);
    Ideal I = f.ideal();
    if (opt.dual && !f.ring.is_dual()) I = I.over(BaseRing::dual_numbers(f.ring.p));
    return I;
}

Poly arg_poly(const BaseRing& R, const std::string& s, Report& rep) {
    rep.digest_input += s;
    rep.digest_input.push_back('\0');
    return parse_poly(R, s);
}

void emit_curve(const Ideal& I, const Options& opt, Report& rep) {
    std::string text = format_curve_file(I);
    validate_curve(parse_curve_file(text).ideal());  // emitted files re-validate
    if (!opt.out.empty()) {
        std::ofstream(opt.out) << text;
        rep.results["output"] = opt.out;
    } else if (!opt.json) {
        rep.say(text.substr(0, text.size() - 1));
    }
    rep.results["ideal"] = ideal_json(I);
}

void curve_summary(const CurveFamily& C, Report& rep) {
    rep.results["degree"] = C.degree();
    rep.results["genus"] = C.genus();
    rep.say("degree " + std::to_string(C.degree()) + ", genus " + std::to_string(C.genus()));
}

int decision_code(Decision d) { return d == Decision::Yes ? kOk : d == Decision::No ? kNo : kUndecided; }

json shift_json(const ShiftDecision& s) {
    json j{{"decision", to_string(s.decision)}};
    if (s.decision == Decision::Yes) j["h"] = s.h;
    if (!s.detail.empty()) j["detail"] = s.detail;
    return j;
}

std::string shift_text(const ShiftDecision& s) {
    std::string t = to_string(s.decision);
    if (s.decision == Decision::Yes) t += "(" + std::to_string(s.h) + ")";
    return t;
}

// ---------------------------------------------------------------------------

void cmd_validate(const std::string& file, const Options& opt, Report& rep) {
    CurveFamily C = validate_curve(load(file, opt, rep));
    rep.results["valid"] = true;
    curve_summary(C, rep);
}

void cmd_invariants(const std::string& file, const Options& opt, Report& rep) {
    CurveFamily C = validate_curve(load(file, opt, rep));
    curve_summary(C, rep);
    rep.results["regularity"] = C.regularity();
    auto hf = C.ideal().fiber().hilbert_function(C.regularity() + opt.margin);
    rep.results["hilbert_function"] = hf;
    const RaoModule& M = rao_module(C);
    rep.results["rao_dims"] = dims_json(M.dims_map());
    rep.say("regularity " + std::to_string(C.regularity()));
    rep.say("hilbert function " + json(hf).dump());
    rep.say("rao module dims " + dims_json(M.dims_map()).dump());
}

void cmd_saturate(const std::string& file, const Options& opt, Report& rep) {
    Ideal I = saturate_irrelevant(load(file, opt, rep)).minimalized();
    CurveFamily C = validate_curve(I);
    curve_summary(C, rep);
    emit_curve(I, opt, rep);
}

void cmd_link(const std::string& file, const std::string& f, const std::string& g, const Options& opt,
              Report& rep) {
    Ideal I = load(file, opt, rep);
    CurveFamily C = validate_curve(I);
    CurveFamily L = link(C, arg_poly(I.ring(), f, rep), arg_poly(I.ring(), g, rep));
    curve_summary(L, rep);
    emit_curve(L.ideal().minimalized(), opt, rep);
}

void cmd_bilink(const std::string& file, const std::string& q, const std::string& hq, int h, const Options& opt,
                Report& rep) {
    Ideal I = load(file, opt, rep);
    rep.digest_input += std::to_string(h);
    auto [C2, step] = trivial_biliaison(validate_curve(I), arg_poly(I.ring(), q, rep), arg_poly(I.ring(), hq, rep),
                                        h, opt.trials, opt.seed);
    curve_summary(C2, rep);
    rep.results["verified"] = true;
    emit_curve(C2.ideal().minimalized(), opt, rep);
}

void cmd_ntype(const std::string& file, const Options& opt, Report& rep) {
    CurveFamily C = validate_curve(load(file, opt, rep));
    NTypeResolution n = n_type_resolution(C);
    auto [N0, free] = strip_free_summands(n.N);
    rep.results["P"] = summands(n.P);
    rep.results["N_generators"] = summands(n.N.generators());
    rep.results["N_relations"] = summands(n.N.presentation().source());
    rep.results["N_free_part"] = summands(FreeModule(free));
    rep.results["N_is_free"] = N0.is_zero();
    rep.results["certified"] = true;
    rep.say("P " + summands(n.P).dump());
    rep.say("N generators " + summands(n.N.generators()).dump() + ", relations " +
            summands(n.N.presentation().source()).dump());
    rep.say(std::string("N free: ") + (N0.is_zero() ? "yes" : "no") + ", certified");
}

void cmd_etype(const std::string& file, const Options& opt, Report& rep) {
    CurveFamily C = validate_curve(load(file, opt, rep));
    ETypeResolution e = e_type_resolution(C);
    rep.results["F"] = summands(e.F);
    rep.results["E_generators"] = summands(e.E.generators());
    rep.results["E_relations"] = summands(e.E.presentation().source());
    rep.results["certified"] = true;
    rep.say("F " + summands(e.F).dump());
    rep.say("E generators " + summands(e.E.generators()).dump() + ", relations " +
            summands(e.E.presentation().source()).dump() + ", certified");
}

void cmd_compare(const std::string& a, const std::string& b, const Options& opt, Report& rep) {
    CurveFamily C = validate_curve(load(a, opt, rep)), C2 = validate_curve(load(b, opt, rep));
    ShiftDecision d = biliaison_equivalent(C, C2, opt.trials, opt.seed);
    rep.results = shift_json(d);
    rep.say(shift_text(d) + (d.detail.empty() ? "" : ": " + d.detail));
    rep.code = decision_code(d.decision);
}

void cmd_parity(const std::string& a, const std::string& b, const Options& opt, Report& rep) {
    CurveFamily C = validate_curve(load(a, opt, rep)), C2 = validate_curve(load(b, opt, rep));
    ParityResult p = liaison_parity(C, C2, opt.trials, opt.seed);
    rep.results["parity"] = to_string(p.parity);
    rep.results["even"] = shift_json(p.even);
    rep.results["odd"] = shift_json(p.odd);
    rep.say(std::string(to_string(p.parity)) + " (even " + shift_text(p.even) + ", odd " + shift_text(p.odd) + ")");
    rep.code = p.parity == Parity::Undecided ? kUndecided : p.parity == Parity::Neither ? kNo : kOk;
}

void cmd_connect(const std::string& a, const std::string& b, const Options& opt, Report& rep) {
    CurveFamily C = validate_curve(load(a, opt, rep)), C2 = validate_curve(load(b, opt, rep));
    auto steps = connect_by_biliaisons(C, C2, opt.max_height, opt.trials, opt.seed);
    if (!(replay_chain(C, steps, opt.trials, opt.seed) == C2.ideal()))
        throw CertificationFailure("chain does not reach the target");
    json chain = chain_json(C.base(), steps);
    rep.results["steps"] = steps.size();
    rep.results["verified"] = true;
    for (std::size_t i = 0; i < steps.size(); ++i)
        rep.say("step " + std::to_string(i + 1) + ": Q = " + steps[i].Q.to_string() + ", h = " +
                std::to_string(steps[i].h) + ", degree " + std::to_string(validate_curve(steps[i].to).degree()));
    if (!opt.out.empty()) {
        std::ofstream(opt.out) << chain.dump(2) << "\n";
        rep.results["output"] = opt.out;
    } else {
        rep.results["chain"] = chain;
    }
}

void cmd_replay(const std::string& a, const std::string& chainfile, const std::string& target, const Options& opt,
                Report& rep) {
    CurveFamily C = validate_curve(load(a, opt, rep));
    std::string text = read_text(chainfile);
    rep.digest_input += text;
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
    auto [R, steps] = chain_from_json(j);
    if (!(R == C.base())) throw MixedBase{};
    Ideal end = replay_chain(C, steps, opt.trials, opt.seed);
    rep.results["steps"] = steps.size();
    rep.results["ideal"] = ideal_json(end);
    rep.say("replayed " + std::to_string(steps.size()) + " steps");
    if (!target.empty()) {
        bool ok = end == validate_curve(load(target, opt, rep)).ideal();
        rep.results["reaches_target"] = ok;
        rep.say(ok ? "reaches target" : "does not reach target");
        if (!ok) rep.code = kNo;
    }
}

// `run` also certifies both resolutions of each fixture, with a per-fixture seed.
void cmd_corpus(const Options& opt, bool run, Report& rep) {
    json arr = json::array();
    rep.digest_input += opt.corpus_dir;
    for (const CorpusEntry& e : list_corpus(opt.corpus_dir)) {
        Report sub;
        CurveFamily C = validate_curve(load(e.path, opt, sub));
        rep.digest_input += sub.digest_input;
        const RaoModule& M = rao_module(C);
        json r{{"name", e.name},
               {"base", C.base().is_dual() ? "dual" : "field"},
               {"degree", C.degree()},
               {"genus", C.genus()},
               {"regularity", C.regularity()},
               {"rao_dims", dims_json(M.dims_map())}};
        std::string line = e.name + ": d=" + std::to_string(C.degree()) + " g=" + std::to_string(C.genus()) +
                           " rao " + dims_json(M.dims_map()).dump();
        if (run) {
            std::uint64_t seed = opt.seed ^ fnv1a(e.name);
            NTypeResolution n = n_type_resolution(C, 1, seed);
            ETypeResolution et = e_type_resolution(C);
            assemble_ne_sequence(n, et);
            Decision self = psi_equivalent(n.N, n_type_resolution(C).N, false, opt.trials, seed).decision;
            r["N"] = summands(n.N.generators());
            r["E"] = summands(et.E.generators());
            r["self_equivalent"] = to_string(self);
            line += " N " + summands(n.N.generators()).dump() + " E " + summands(et.E.generators()).dump() +
                    " self " + to_string(self);
        }
        arr.push_back(r);
        rep.say(line);
    }
    rep.results["curves"] = arr;
}

// ---------------------------------------------------------------------------

const char* error_kind(const std::exception& e) {
    if (auto* x = dynamic_cast<const InvalidCurve*>(&e)) return to_string(x->reason);
    if (auto* x = dynamic_cast<const LiaisonError*>(&e)) return to_string(x->kind);
    if (auto* x = dynamic_cast<const ConnectError*>(&e)) return to_string(x->kind);
    if (dynamic_cast<const NoLift*>(&e)) return "NoLift";
    if (dynamic_cast<const NotPsi*>(&e)) return "NotPsi";
    if (dynamic_cast<const MixedBase*>(&e)) return "MixedBase";
    if (dynamic_cast<const NotLiftable*>(&e)) return "NotLiftable";
    if (dynamic_cast<const NotFiniteLength*>(&e)) return "NotFiniteLength";
    if (dynamic_cast<const CertificationFailure*>(&e)) return "CertificationFailure";
    if (dynamic_cast<const OracleMismatch*>(&e)) return "OracleMismatch";
    return "Error";
}

int run(const Options& opt, Report& rep, const std::function<void()>& body) {
    try {
        body();
    } catch (const ParseError& e) {
        rep.code = kParse;
        rep.results = {{"error", {{"kind", "ParseError"}, {"message", e.what()}}}};
    } catch (const ConnectError& e) {
        rep.code = e.kind == ConnectError::Kind::Undecided ? kUndecided : kNo;
        rep.results = {{"error", {{"kind", error_kind(e)}, {"message", e.what()}}}};
    } catch (const std::exception& e) {
        rep.code = kDomain;
        rep.results = {{"error", {{"kind", error_kind(e)}, {"message", e.what()}}}};
        if (auto* x = dynamic_cast<const NoLift*>(&e)) rep.results["error"]["n0"] = x->n0;
    }
    if (opt.json) {
        json out{{"schema_version", 1},
                 {"command", rep.command},
                 {"inputs_digest", hex64(fnv1a(rep.digest_input))},
                 {"seed", opt.seed},
                 {"exit_code", rep.code},
                 {"results", rep.results}};
        std::cout << out.dump(2) << "\n";
    } else if (rep.results.contains("error")) {
        std::cerr << rep.results["error"]["kind"].get<std::string>() << ": "
                  << rep.results["error"]["message"].get<std::string>() << "\n";
    } else {
        for (const auto& l : rep.lines) std::cout << l << "\n";
    }
    return rep.code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Liaison and biliaison of curves in P^3 over F_p and F_p[e]/(e^2)"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--seed", opt.seed, "random seed")->capture_default_str();
    app.add_option("--trials", opt.trials, "random isomorphism candidates")->capture_default_str();
    app.add_option("--degree-margin", opt.margin, "degrees past the regularity to report")->capture_default_str();
    app.add_flag("--json", opt.json, "machine-readable report");
    app.add_flag("--dual-numbers", opt.dual, "read field curves as constant families over F_p[e]/(e^2)");

    Report rep;
    std::function<void()> body;
    std::string a, b, c, d, target;
    int h = 0;

    auto* v = app.add_subcommand("validate", "check that a file defines a curve");
    v->add_option("file", a)->required();
    v->callback([&] { body = [&] { cmd_validate(a, opt, rep); }; });

    auto* inv = app.add_subcommand("invariants", "degree, genus, Hilbert function, regularity, Rao module");
    inv->add_option("file", a)->required();
    inv->callback([&] { body = [&] { cmd_invariants(a, opt, rep); }; });

    auto* sat = app.add_subcommand("saturate", "saturate an ideal and emit the curve file");
    sat->add_option("file", a)->required();
    sat->add_option("-o,--output", opt.out);
    sat->callback([&] { body = [&] { cmd_saturate(a, opt, rep); }; });

    auto* lk = app.add_subcommand("link", "curve linked by the complete intersection (F, G)");
    lk->add_option("file", a)->required();
    lk->add_option("F", b)->required();
    lk->add_option("G", c)->required();
    lk->add_option("-o,--output", opt.out);
    lk->callback([&] { body = [&] { cmd_link(a, b, c, opt, rep); }; });

    auto* bl = app.add_subcommand("bilink", "trivial biliaison H I + (Q) of height h");
    bl->add_option("file", a)->required();
    bl->add_option("Q", b)->required();
    bl->add_option("H", c)->required();
    bl->add_option("height", h, "h")->required();
    bl->add_option("-o,--output", opt.out);
    bl->callback([&] { body = [&] { cmd_bilink(a, b, c, h, opt, rep); }; });

    auto* nt = app.add_subcommand("ntype", "extraverted N-type resolution");
    nt->add_option("file", a)->required();
    nt->callback([&] { body = [&] { cmd_ntype(a, opt, rep); }; });

    auto* et = app.add_subcommand("etype", "introverted E-type resolution");
    et->add_option("file", a)->required();
    et->callback([&] { body = [&] { cmd_etype(a, opt, rep); }; });

    auto* cmp = app.add_subcommand("compare", "same biliaison class? Yes(h) means I_A ~ I_B(h)");
    cmp->add_option("first", a)->required();
    cmp->add_option("second", b)->required();
    cmp->callback([&] { body = [&] { cmd_compare(a, b, opt, rep); }; });

    auto* par = app.add_subcommand("parity", "even, odd, both or neither");
    par->add_option("first", a)->required();
    par->add_option("second", b)->required();
    par->callback([&] { body = [&] { cmd_parity(a, b, opt, rep); }; });

    auto* con = app.add_subcommand("connect", "verified chain of elementary biliaisons");
    con->add_option("first", a)->required();
    con->add_option("second", b)->required();
    con->add_option("--max-height", opt.max_height)->capture_default_str();
    con->add_option("-o,--output", opt.out, "chain file");
    con->callback([&] { body = [&] { cmd_connect(a, b, opt, rep); }; });

    auto* rp = app.add_subcommand("replay", "apply a chain file to a curve");
    rp->add_option("file", a)->required();
    rp->add_option("chain", d)->required();
    rp->add_option("--target", target);
    rp->callback([&] { body = [&] { cmd_replay(a, d, target, opt, rep); }; });

    auto* cor = app.add_subcommand("corpus", "the fixture curves");
    cor->add_option("--dir", opt.corpus_dir)->capture_default_str();
    cor->require_subcommand(1);
    cor->add_subcommand("list", "validate and summarize every fixture")->callback([&] {
        body = [&] { cmd_corpus(opt, false, rep); };
    });
    cor->add_subcommand("run", "also certify resolutions of every fixture")->callback([&] {
        body = [&] { cmd_corpus(opt, true, rep); };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kParse;
    }
    for (CLI::App* sub = app.get_subcommands().front(); sub;
         sub = sub->get_subcommands().empty() ? nullptr : sub->get_subcommands().front())
        rep.command += (rep.command.empty() ? "" : " ") + sub->get_name();
    return run(opt, rep, body);
}
