#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "arithsurf/checks.hpp"
#include "arithsurf/detcoh.hpp"
#include "arithsurf/errors.hpp"
#include "arithsurf/idelic.hpp"
#include "arithsurf/series2d.hpp"
#include "arithsurf/textio.hpp"

using namespace arithsurf;
using ordered_json = nlohmann::ordered_json;

namespace {

struct schema_error : arith_error {
    explicit schema_error(const std::string& m) : arith_error(m) {}
};

ordered_json divisor_json(const DivisorOnB& d) {
    ordered_json arr = ordered_json::array();
    for (const auto& [b, n] : d.coeff) arr.push_back({{"prime", b.str()}, {"coeff", n}});
    return arr;
}

ordered_json class_json(const ClassOnB& c) {
    ordered_json j;
    j["principal"] = c.principal;
    if (c.principal)
        j["generator"] = c.generator->str();
    else
        j["witness_bound"] = c.search_bound.get_str();
    return j;
}

struct DivisorFile {
    NumberField K;
    DivisorOnX divisor;
    ordered_json echo;
};

DivisorFile load_divisor(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw schema_error("cannot open " + path);
    ordered_json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw schema_error(std::string("invalid JSON in ") + path + ": " + e.what());
    }
    if (!j.contains("field") || !j.contains("divisor"))
        throw schema_error(path + ": need \"field\" and \"divisor\"");
    DivisorFile out;
    out.K = parse_field(j["field"].get<std::string>());
    for (const auto& item : j["divisor"]) {
        CurveOnX y = parse_curve(item.at("curve").get<std::string>(), out.K);
        out.divisor.add(y, item.at("coeff").get<long>());
    }
    out.echo = j;
    return out;
}

DoubleSeries load_series(const std::string& path, LocalRingPtr* ring_out) {
    std::ifstream in(path);
    if (!in) throw schema_error("cannot open " + path);
    ordered_json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw schema_error(std::string("invalid JSON in ") + path + ": " + e.what());
    }
    NumberField K = parse_field(j.value("field", "Q"));
    PrimeOfB b = parse_prime(j.at("prime").get<std::string>(), K);
    int prec = j.value("prec", 64);
    auto R = LocalRing::completion(b, prec);
    if (ring_out) *ring_out = R;
    std::vector<std::pair<int, NFElem>> terms;
    for (const auto& t : j.at("terms"))
        terms.push_back({t.at(0).get<int>(), NFElem::parse(t.at(1).get<std::string>(), K)});
    int floor = j.contains("tail_floor") && !j["tail_floor"].is_null()
                    ? j["tail_floor"].get<int>()
                    : DoubleSeries::kInfinity;
    return DoubleSeries::from_terms(R, terms, floor);
}

ordered_json series_json(const DoubleSeries& s) {
    ordered_json terms = ordered_json::array();
    for (const auto& [j, a] : s.coeffs) terms.push_back({j, a.str()});
    ordered_json out;
    out["terms"] = terms;
    if (s.tail_floor < DoubleSeries::kInfinity) out["tail_floor"] = s.tail_floor;
    return out;
}

int exit_code_for(const arith_error& e) {
    if (dynamic_cast<const schema_error*>(&e)) return 1;
    if (dynamic_cast<const unsupported_error*>(&e)) return 2;
    if (dynamic_cast<const precision_error*>(&e)) return 3;
    return 1;  // value errors are malformed inputs
}

ClosedPointOnX parse_point(const ordered_json& j, const NumberField& K) {
    ClosedPointOnX x;
    x.b = parse_prime(j.at("prime").get<std::string>(), K);
    if (j.value("infinity", false)) {
        x.at_infinity = true;
        return x;
    }
    auto kb = residue_field(x.b);
    Poly<NFElem> mp = parse_poly(j.at("minpoly").get<std::string>(), NumberField::Q());
    std::vector<FqElem> mc;
    for (int i = 0; i <= mp.deg(); ++i) mc.push_back(kb->from_int(Int(mp.coeff(i).a.get_num())));
    x.minpoly = make_monic(Poly<FqElem>(mc));
    if (x.minpoly.deg() < 1 || !fq_is_irreducible(x.minpoly))
        throw schema_error("point minimal polynomial must be irreducible over k(b)");
    x.deg = x.minpoly.deg();
    return x;
}

// idele literal: {"alpha": [{"curve": ..., "value": ...}],
//                 "beta": [{"point": {...}, "value": ...}],
//                 "alpha_global": ..., "beta_global": ...}
IdeleTriple parse_idele(const ordered_json& j, const NumberField& K) {
    IdeleTriple r(K);
    if (j.contains("alpha_global"))
        r.alpha_global = parse_function(j["alpha_global"].get<std::string>(), K);
    if (j.contains("beta_global"))
        r.beta_global = parse_function(j["beta_global"].get<std::string>(), K);
    if (j.contains("alpha"))
        for (const auto& item : j["alpha"]) {
            CurveOnX y = parse_curve(item.at("curve").get<std::string>(), K);
            r.alpha_curve.emplace(y, parse_function(item.at("value").get<std::string>(), K));
        }
    if (j.contains("beta"))
        for (const auto& item : j["beta"]) {
            ClosedPointOnX x = parse_point(item.at("point"), K);
            r.beta_point.emplace(x, parse_function(item.at("value").get<std::string>(), K));
        }
    if (j.contains("overrides"))
        for (const auto& item : j["overrides"]) {
            // per-flag unit adjustments of the beta component
            ClosedPointOnX x = parse_point(item.at("point"), K);
            FactoredFunction u = parse_function(item.at("value").get<std::string>(), K);
            r = r.with_beta_unit(x, u);
        }
    r.validate();
    return r;
}

// line bundle data from a divisor on the model surface: sections and fibers
ModelLineBundle bundle_from_divisor(const NumberField& K, const DivisorOnX& D) {
    ModelLineBundle L;
    L.K = K;
    for (const auto& [y, n] : D.coeff) {
        switch (y.kind) {
            case CurveOnX::Kind::horizontal:
                if (y.h.deg() != 1)
                    throw unsupported_error("detcoh route needs degree-1 horizontal components");
                L.n += static_cast<int>(n);
                break;
            case CurveOnX::Kind::infinity_section:
                L.n += static_cast<int>(n);
                break;
            case CurveOnX::Kind::vertical:
                L.twist.add(y.b, n);
                break;
        }
    }
    return L;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Kato symbols and Deligne pairings on P^1 over O_K"};
    app.require_subcommand(1);
    app.fallthrough();

    int prec = 64;
    uint64_t seed = 1;
    bool timing = false;
    app.add_option("--prec", prec, "working p-adic precision (digits)");
    app.add_option("--seed", seed, "random seed for check runners");
    app.add_flag("--timing", timing, "include elapsed time in the report");

    // symbol
    auto* sym = app.add_subcommand("symbol", "Kato symbol at a flag");
    std::string sym_field = "Q", sym_curve, sym_prime, sym_point = "inf", sym_f = "1", sym_g = "1";
    sym->add_option("--field", sym_field);
    sym->add_option("--curve", sym_curve)->required();
    sym->add_option("--prime", sym_prime)->required();
    sym->add_option("--point", sym_point, "minimal polynomial over k(b) in t, or 'inf'");
    sym->add_option("--f", sym_f);
    sym->add_option("--g", sym_g);

    // pair
    auto* pair = app.add_subcommand("pair", "pairing of two divisors");
    std::string route = "idelic";
    std::vector<std::string> divisor_files;
    pair->add_option("--route", route)->check(CLI::IsMember({"idelic", "deligne", "detcoh"}));
    pair->add_option("--divisors", divisor_files)->expected(2)->required();

    // detcoh
    auto* det = app.add_subcommand("detcoh", "determinant of cohomology of O(n) (x) twist");
    std::string det_field = "Q";
    int det_n = 0;
    std::vector<std::string> det_twists;
    det->add_option("--field", det_field);
    det->add_option("--bundle", det_n)->required();
    det->add_option("--twist", det_twists, "prime:exponent, e.g. (2):1");

    // check
    auto* chk = app.add_subcommand("check", "deterministic property-check runner");
    std::string kind;
    int cases = 25;
    chk->add_option("--kind", kind)->required()->check(CLI::IsMember(check_kinds()));
    chk->add_option("--cases", cases);

    // run a scenario file
    auto* scn = app.add_subcommand("run", "execute a scenario file");
    std::string scenario_file;
    scn->add_option("--scenario", scenario_file)->required();

    // series
    auto* ser = app.add_subcommand("series", "double series arithmetic");
    std::string op = "val";
    std::vector<std::string> series_files;
    ser->add_option("--op", op)->check(CLI::IsMember({"val", "reduce", "winding", "mul", "add"}));
    ser->add_option("--series", series_files)->expected(-1)->required();

    CLI11_PARSE(app, argc, argv);

    auto t0 = std::chrono::steady_clock::now();
    ordered_json report;
    try {
        if (sym->parsed()) {
            NumberField K = parse_field(sym_field);
            CurveOnX y = parse_curve(sym_curve, K);
            PrimeOfB b = parse_prime(sym_prime, K);
            ClosedPointOnX x;
            x.b = b;
            if (sym_point == "inf" || sym_point == "infinity") {
                x.at_infinity = true;
            } else {
                auto kb = residue_field(b);
                Poly<NFElem> mp = parse_poly(sym_point, NumberField::Q());
                std::vector<FqElem> mc;
                for (int i = 0; i <= mp.deg(); ++i)
                    mc.push_back(kb->from_int(Int(mp.coeff(i).a.get_num())));
                x.minpoly = Poly<FqElem>(mc);
                if (x.minpoly.deg() < 1 || !fq_is_irreducible(x.minpoly))
                    throw schema_error("point minimal polynomial must be irreducible over k(b)");
                x.minpoly = make_monic(x.minpoly);
                x.deg = x.minpoly.deg();
            }
            FactoredFunction f = parse_function(sym_f, K);
            FactoredFunction g = parse_function(sym_g, K);
            LocalNum v = retry_with_precision(
                [&](int pr) { return kato_symbol(Flag{x, y}, f, g, pr); }, prec);
            report["command"] = "symbol";
            report["field"] = field_str(K);
            report["inputs"] = {{"curve", sym_curve}, {"prime", b.str()}, {"point", sym_point},
                                {"f", sym_f},         {"g", sym_g}};
            report["value"] = {{"valuation", v.v},
                               {"unit_residue", v.u.residue().str()},
                               {"is_one", v.v == 0 && (v.u - v.u.R->one()).negligible()}};
            report["precision"] = prec;
        } else if (pair->parsed()) {
            DivisorFile D = load_divisor(divisor_files[0]);
            DivisorFile E = load_divisor(divisor_files[1]);
            if (!(D.K == E.K)) throw schema_error("divisor files use different base fields");
            report["command"] = "pair";
            report["route"] = route;
            report["field"] = field_str(D.K);
            report["inputs"] = {{"D", D.echo}, {"E", E.echo}};
            if (route == "idelic") {
                IdeleTriple r = canonical_lift(D.divisor, E.divisor, D.K, prec);
                IdeleTriple s = canonical_lift(E.divisor, D.divisor, D.K, prec);
                PairingResult pr = idelic_pairing(r, s, prec);
                report["divisor"] = divisor_json(pr.divisor);
                report["class"] = class_json(pr.cls);
                if (pr.principal_correction)
                    report["principal_correction"] = pr.principal_correction->str();
            } else if (route == "deligne") {
                DivisorOnB d = deligne_divisor(D.divisor, E.divisor, prec);
                report["divisor"] = divisor_json(d);
                report["class"] = class_json(divisor_class_reduce(d, D.K));
            } else {
                ModelLineBundle L = bundle_from_divisor(D.K, D.divisor);
                ModelLineBundle M = bundle_from_divisor(E.K, E.divisor);
                DivisorOnB d = adelic_deligne_divisor(L, M);
                report["divisor"] = divisor_json(d);
                report["class"] = class_json(divisor_class_reduce(d, D.K));
            }
        } else if (det->parsed()) {
            NumberField K = parse_field(det_field);
            ModelLineBundle L;
            L.K = K;
            L.n = det_n;
            for (const auto& tw : det_twists) {
                auto colon = tw.rfind(':');
                if (colon == std::string::npos) throw schema_error("twist needs prime:exponent");
                PrimeOfB b = parse_prime(tw.substr(0, colon), K);
                L.twist.add(b, std::stol(tw.substr(colon + 1)));
            }
            DivisorOnB d = det_rphi(L);
            DivisorOnB da = det_rphi_adelic(L);
            report["command"] = "detcoh";
            report["field"] = field_str(K);
            report["bundle"] = det_n;
            report["determinant"] = divisor_json(d);
            report["class"] = class_json(divisor_class_reduce(d, K));
            report["adelic_route_agrees"] = (d == da);
        } else if (chk->parsed()) {
            CheckResult r = run_check(kind, seed, cases, prec);
            report["command"] = "check";
            report["kind"] = r.kind;
            report["seed"] = seed;
            report["cases"] = r.cases;
            report["failures"] = r.failures;
            report["pass"] = r.pass();
            if (!r.notes.empty()) report["notes"] = r.notes;
        } else if (scn->parsed()) {
            std::ifstream in(scenario_file);
            if (!in) throw schema_error("cannot open " + scenario_file);
            ordered_json j;
            try {
                in >> j;
            } catch (const std::exception& e) {
                throw schema_error(std::string("invalid JSON: ") + e.what());
            }
            NumberField K = parse_field(j.at("field").get<std::string>());
            int sprec = j.value("prec", prec);
            uint64_t sseed = j.value("seed", seed);
            std::map<std::string, DivisorOnX> divisors;
            if (j.contains("divisors"))
                for (const auto& [name, items] : j["divisors"].items()) {
                    DivisorOnX d;
                    for (const auto& item : items)
                        d.add(parse_curve(item.at("curve").get<std::string>(), K),
                              item.at("coeff").get<long>());
                    divisors[name] = d;
                }
            std::map<std::string, IdeleTriple> ideles;
            if (j.contains("ideles"))
                for (const auto& [name, lit] : j["ideles"].items())
                    ideles.emplace(name, parse_idele(lit, K));
            auto named_divisor = [&](const std::string& n) {
                auto it = divisors.find(n);
                if (it == divisors.end()) throw schema_error("unknown divisor name " + n);
                return it->second;
            };
            auto named_or_lifted = [&](const std::string& n, const std::string& partner) {
                auto it = ideles.find(n);
                if (it != ideles.end()) return it->second;
                return canonical_lift(named_divisor(n), named_divisor(partner), K, sprec);
            };
            ordered_json results = ordered_json::array();
            for (const auto& comp : j.at("computations")) {
                std::string op2 = comp.at("op").get<std::string>();
                ordered_json res;
                res["op"] = op2;
                if (op2 == "pair") {
                    std::string route2 = comp.value("route", "idelic");
                    std::string an = comp.at("args")[0].get<std::string>();
                    std::string bn = comp.at("args")[1].get<std::string>();
                    res["route"] = route2;
                    res["args"] = {an, bn};
                    if (route2 == "idelic") {
                        IdeleTriple r = named_or_lifted(an, bn);
                        IdeleTriple s2 = named_or_lifted(bn, an);
                        PairingResult pr = idelic_pairing(r, s2, sprec);
                        res["divisor"] = divisor_json(pr.divisor);
                        res["class"] = class_json(pr.cls);
                        if (pr.principal_correction)
                            res["principal_correction"] = pr.principal_correction->str();
                    } else if (route2 == "deligne") {
                        DivisorOnB d = deligne_divisor(named_divisor(an), named_divisor(bn), sprec);
                        res["divisor"] = divisor_json(d);
                        res["class"] = class_json(divisor_class_reduce(d, K));
                    } else {
                        ModelLineBundle L = bundle_from_divisor(K, named_divisor(an));
                        ModelLineBundle M = bundle_from_divisor(K, named_divisor(bn));
                        DivisorOnB d = adelic_deligne_divisor(L, M);
                        res["divisor"] = divisor_json(d);
                        res["class"] = class_json(divisor_class_reduce(d, K));
                    }
                } else if (op2 == "divisor_of") {
                    std::string an = comp.at("args")[0].get<std::string>();
                    auto it = ideles.find(an);
                    if (it == ideles.end()) throw schema_error("unknown idele name " + an);
                    res["divisor_on_X"] = divisor_of(it->second).str();
                } else if (op2 == "check") {
                    std::string kind2 = comp.at("kind").get<std::string>();
                    CheckResult cr = run_check(kind2, sseed, comp.value("cases", 25), sprec);
                    res["kind"] = cr.kind;
                    res["cases"] = cr.cases;
                    res["failures"] = cr.failures;
                    res["pass"] = cr.pass();
                } else {
                    throw schema_error("unknown computation op " + op2);
                }
                results.push_back(res);
            }
            report["command"] = "run";
            report["field"] = field_str(K);
            report["prec"] = sprec;
            report["seed"] = sseed;
            report["results"] = results;
        } else if (ser->parsed()) {
            report["command"] = "series";
            report["op"] = op;
            LocalRingPtr R;
            DoubleSeries a = load_series(series_files[0], &R);
            if (op == "val") {
                report["value"] = a.val();
            } else if (op == "winding") {
                report["value"] = a.winding_number();
            } else if (op == "reduce") {
                report["value"] = a.reduce().str();
            } else {
                if (series_files.size() < 2) throw schema_error("binary series op needs two files");
                DoubleSeries b2 = load_series(series_files[1], nullptr);
                DoubleSeries c = op == "mul" ? a * b2 : a + b2;
                report["result"] = series_json(c);
            }
        }
    } catch (const arith_error& e) {
        ordered_json err;
        err["error"] = e.what();
        std::cout << err.dump(2) << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        ordered_json err;
        err["error"] = e.what();
        std::cout << err.dump(2) << "\n";
        return 1;
    }
    if (timing) {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(                       std::chrono::steady_clock::now() - t0)
                      .count();
        report["elapsed_ms"] = ms;
    }
    std::cout << report.dump(2) << "\n";
    return 0;
}
