#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "zetaspec/zetaspec.hpp"

namespace zetaspec::cli {

using nlohmann::json;

inline Cplx parse_complex(const std::string& text) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw SyntaxError("empty complex literal");
    auto comma = t.find(',');
    try {
        if (comma != std::string::npos)
            return {std::stod(t.substr(0, comma)), std::stod(t.substr(comma + 1))};
        if (t.back() == 'i' || t.back() == 'I') {
            std::string body = t.substr(0, t.size() - 1);
            // split at the last +/- that is not an exponent sign or leading
            std::size_t split = std::string::npos;
            for (std::size_t i = body.size(); i-- > 1;) {
                if ((body[i] == '+' || body[i] == '-') &&
                    body[i - 1] != 'e' && body[i - 1] != 'E') {
                    split = i;
                    break;
                }
            }
            if (split == std::string::npos) {
                if (body.empty() || body == "+") return {0.0, 1.0};
                if (body == "-") return {0.0, -1.0};
                return {0.0, std::stod(body)};
            }
            std::string im = body.substr(split);
            if (im == "+") im = "1";
            if (im == "-") im = "-1";
            return {std::stod(body.substr(0, split)), std::stod(im)};
        }
        size_t pos = 0;
        double re = std::stod(t, &pos);
        if (pos != t.size()) throw SyntaxError("malformed complex literal: " + text);
        return {re, 0.0};
    } catch (const std::invalid_argument&) {
        throw SyntaxError("malformed complex literal: " + text);
    } catch (const std::out_of_range&) {
        throw SyntaxError("complex literal out of range: " + text);
    }
}

inline Rational parse_rational(const std::string& text) {
    std::istringstream is(text);
    Rational r;
    if (!(is >> r)) throw SyntaxError("malformed rational literal: " + text);
    std::string rest;
    if (is >> rest) throw SyntaxError("malformed rational literal: " + text);
    return r;
}

inline json complex_json(const Cplx& v) { return json{{"re", v.real()}, {"im", v.imag()}}; }

struct Output {
    std::string command;
    Cplx value{0.0, 0.0};
    double error_estimate = 0.0;
    std::string method = "NONE";
    json params = json::object();
    std::vector<std::string> warnings;
};

inline void attach_suggestion(Output& o) {
    if (std::abs(o.value.imag()) > 1e-12) return;
    if (auto r = nearest_rational(o.value.real(), 1000, 1e-9))
        o.params["suggested_rational"] = to_string(*r);
}

inline void emit(const Output& o, bool as_json, std::ostream& out) {
    if (as_json) {
        json j;
        j["command"] = o.command;
        j["value"] = complex_json(o.value);
        j["error_estimate"] = o.error_estimate;
        j["method"] = o.method;
        j["params"] = o.params;
        j["warnings"] = o.warnings;
        out << j.dump(2) << "\n";
        return;
    }
    out << "command: " << o.command << "\n";
    out << std::setprecision(17);
    if (o.value.imag() == 0.0)
        out << "value: " << o.value.real();
    else
        out << "value: " << o.value.real() << " + " << o.value.imag() << "i";
    if (o.params.contains("suggested_rational"))
        out << "   (nearest small rational: " << o.params["suggested_rational"].get<std::string>()
            << ", suggestion only)";
    out << "\n";
    out << "error estimate: " << o.error_estimate << "\n";
    out << "method: " << o.method << "\n";
    out << "params: " << o.params.dump() << "\n";
    for (const auto& w : o.warnings) out << "warning: " << w << "\n";
}

inline void fill_from(Output& o, const SpecialValue& v) {
    o.value = v.value;
    o.error_estimate = v.error_estimate;
    o.method = method_name(v.method);
    if (v.params.N) o.params["N"] = *v.params.N;
    if (v.params.s) o.params["s"] = complex_json(*v.params.s);
    if (v.params.order) o.params["order"] = v.params.order;
    if (v.params.w) o.params["w"] = *v.params.w;
    if (v.params.k) o.params["k"] = *v.params.k;
}

// Shared polynomial/quadrature arguments.
struct CommonArgs {
    int p = 1;
    std::vector<std::string> f_texts;
    std::string g_text = "1";
    int order = 32;
    bool assume_mahler = false;
    std::string format = "text";

    MultiPoly f() const { return parse_poly(f_texts.at(0), p); }
    MultiPoly g() const { return parse_poly(g_text, p); }
    QuadratureRule rule() const { return QuadratureRule::gauss_legendre(order); }
    EngineOptions opts() const {
        EngineOptions o;
        o.assume_mahler = assume_mahler;
        return o;
    }
    bool json_format() const { return format == "json"; }
};

inline void add_common(CLI::App* cmd, CommonArgs& a, bool many_f = false) {
    cmd->add_option("-p,--num-vars", a.p, "number of variables (1..9)")->required();
    auto* fopt = cmd->add_option("-f,--poly", a.f_texts,
                                 many_f ? "polynomial factor (repeatable)" : "polynomial f");
    fopt->required();
    if (!many_f) fopt->expected(1);
    cmd->add_option("-g,--weight", a.g_text, "weight polynomial g (default 1)");
    cmd->add_option("--order", a.order, "per-axis quadrature order (default 32)")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--assume-mahler", a.assume_mahler,
                  "proceed when the Mahler check reports LIKELY");
    cmd->add_option("--format", a.format, "output format: text | json")
        ->check(CLI::IsMember({"text", "json"}));
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{
        "zetaspec: special values of multivariate Dirichlet series "
        "zeta(s;f,g) and zeta integrals Z(s;f,g)\n"
        "Polynomial grammar: variables x1..x9 (aliases x,y,z), rational literals like 5/2,\n"
        "operators + - * ^ (non-negative integer exponents), parentheses.\n"
        "ZETASPEC_THREADS caps worker parallelism."};
    app.require_subcommand(1);

    CommonArgs zeta_a, zint_a, zgen_a, shift_a, poles_a, res_a, mahler_a, prod_a, raabe_a;
    int zeta_N = 0, zint_N = 0, shift_N = 0;
    std::string zgen_s, raabe_s, res_s0;
    int poles_ellmax = 10;
    int mahler_density = 8;
    std::string shift_kind = "integral";
    double raabe_tol = 1e-6;

    auto* c_zeta = app.add_subcommand("zeta", "series special value zeta(-N;f,g)");
    add_common(c_zeta, zeta_a);
    c_zeta->add_option("-N", zeta_N, "non-negative integer N")->required()
        ->check(CLI::NonNegativeNumber);

    auto* c_zint = app.add_subcommand("zint", "integral special value Z(-N;f,g)");
    add_common(c_zint, zint_a);
    c_zint->add_option("-N", zint_N, "non-negative integer N")->required()
        ->check(CLI::NonNegativeNumber);

    auto* c_zgen = app.add_subcommand("zgen", "analytic continuation Z(s;f,g)");
    add_common(c_zgen, zgen_a);
    c_zgen->add_option("-s", zgen_s, "complex s (forms: 1.5, -0.5, 1+2i, re,im)")->required();

    auto* c_shift = app.add_subcommand("shiftpoly",
                                       "coefficients of the shift polynomial a -> Z(-N;f_a,g_a)");
    add_common(c_shift, shift_a);
    c_shift->add_option("-N", shift_N, "non-negative integer N")->required()
        ->check(CLI::NonNegativeNumber);
    c_shift->add_option("--kind", shift_kind, "integral | series (default integral)")
        ->check(CLI::IsMember({"integral", "series"}));

    auto* c_poles = app.add_subcommand("poles", "pole candidates (q+p-ell)/m with exclusions");
    add_common(c_poles, poles_a);
    c_poles->add_option("--ell-max", poles_ellmax, "largest ell (default 10)")
        ->check(CLI::NonNegativeNumber);

    auto* c_res = app.add_subcommand("residue", "residue of Z(s;f,g) at a pole candidate");
    add_common(c_res, res_a);
    c_res->add_option("--s0", res_s0, "candidate, an exact rational like 1 or 3/2")->required();

    auto* c_mahler = app.add_subcommand("check-mahler", "three-tier Mahler's Hypothesis check");
    add_common(c_mahler, mahler_a);
    c_mahler->add_option("--grid-density", mahler_density, "sample grid density (default 8)")
        ->check(CLI::PositiveNumber);

    auto* c_verify = app.add_subcommand("verify", "identity checks");
    c_verify->require_subcommand(1);
    auto* c_prod = c_verify->add_subcommand(
        "product-rule", "deg(prod f_j) * value(0; prod f_j, g) = sum_j deg(f_j) * value(0; f_j, g)");
    add_common(c_prod, prod_a, /*many_f=*/true);
    auto* c_raabe = c_verify->add_subcommand(
        "raabe", "Z(s;f,g) = integral over [0,1]^p of zeta(s;f_t,g_t)");
    add_common(c_raabe, raabe_a);
    c_raabe->add_option("-s", raabe_s, "complex s inside the convergence region")->required();
    c_raabe->add_option("--tol", raabe_tol, "acceptance tolerance (default 1e-6)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        Output o;
        bool as_json = false;

        if (app.got_subcommand(c_zeta)) {
            as_json = zeta_a.json_format();
            o.command = "zeta";
            fill_from(o, zeta_special(zeta_a.f(), zeta_a.g(), zeta_N, zeta_a.rule(), zeta_a.opts()));
            attach_suggestion(o);
        } else if (app.got_subcommand(c_zint)) {
            as_json = zint_a.json_format();
            o.command = "zint";
            MultiPoly f = zint_a.f(), g = zint_a.g();
            SpecialValue v = Z_special(f, g, zint_N, zint_a.rule(), zint_a.opts());
            fill_from(o, v);
            if (zint_N == 0) {
                SpecialValue lg = Z_zero_log(f, g, zint_a.rule(), zint_a.opts());
                double diff = std::abs(v.value - lg.value);
                double combined = v.error_estimate + lg.error_estimate;
                o.params["cross_check"] = {{"log_form_value", lg.value.real()},
                                           {"difference", diff},
                                           {"combined_error", combined}};
                if (diff > combined + 1e-9)
                    o.warnings.push_back("valorZ/log-form cross-check disagrees beyond error");
            }
            attach_suggestion(o);
        } else if (app.got_subcommand(c_zgen)) {
            as_json = zgen_a.json_format();
            o.command = "zgen";
            auto [v, br] = Z_general(zgen_a.f(), zgen_a.g(), parse_complex(zgen_s),
                                     zgen_a.rule(), zgen_a.opts());
            fill_from(o, v);
            json terms = json::array();
            for (const auto& t : br.m_terms) {
                json jt{{"lambda", t.lambda}, {"addend", complex_json(t.addend)}};
                if (t.m_value_defined) jt["m_value"] = complex_json(t.m_value);
                terms.push_back(std::move(jt));
            }
            o.params["breakdown"] = {{"z1", complex_json(br.z1)},
                                     {"nk", complex_json(br.nk)},
                                     {"nk_addend", complex_json(br.nk_addend)},
                                     {"m_terms", terms}};
            attach_suggestion(o);
        } else if (app.got_subcommand(c_shift)) {
            as_json = shift_a.json_format();
            o.command = "shiftpoly";
            ShiftKind kind = shift_kind == "series" ? ShiftKind::Series : ShiftKind::Integral;
            ShiftPolyResult r = shift_value_poly(shift_a.f(), shift_a.g(), shift_N, kind,
                                                 shift_a.rule(), shift_a.opts());
            o.method = kind == ShiftKind::Series ? "BERNOULLI" : "VALOR_Z";
            o.params["N"] = shift_N;
            o.params["order"] = shift_a.order;
            o.params["kind"] = shift_kind;
            o.params["degree_bound"] = r.table.degree_bound;
            o.params["residual"] = r.residual;
            o.params["dropped_mass"] = r.dropped_mass;
            json coeffs = json::array();
            for (const auto& [L, e] : r.table.entries)
                coeffs.push_back({{"L", L}, {"value", e.value}, {"error", e.error}});
            o.params["coefficients"] = coeffs;
            o.value = r.table.eval(std::vector<double>(shift_a.p, 0.0));  // Z(-N;f,g)
            for (const auto& [L, e] : r.table.entries)
                if (total_degree(L) == 0) o.error_estimate = e.error;
            o.warnings = r.warnings;
            attach_suggestion(o);
        } else if (app.got_subcommand(c_poles)) {
            as_json = poles_a.json_format();
            o.command = "poles";
            o.method = "POLE_SET";
            auto cands = pole_candidates(poles_a.f(), poles_a.g(), poles_ellmax);
            json arr = json::array();
            for (const auto& c : cands)
                arr.push_back({{"s0", to_string(c.s0)},
                               {"s0_decimal", to_double(c.s0)},
                               {"ell", c.ell},
                               {"excluded", c.excluded}});
            o.params["ell_max"] = poles_ellmax;
            o.params["candidates"] = arr;
        } else if (app.got_subcommand(c_res)) {
            as_json = res_a.json_format();
            o.command = "residue";
            Rational s0 = parse_rational(res_s0);
            Estimate<double> r = residue(res_a.f(), res_a.g(), s0, res_a.rule(), res_a.opts());
            o.value = r.value;
            o.error_estimate = r.error;
            o.method = "RESIDUE";
            o.params["s0"] = to_string(s0);
            o.params["order"] = res_a.order;
            attach_suggestion(o);
        } else if (app.got_subcommand(c_mahler)) {
            as_json = mahler_a.json_format();
            o.command = "check-mahler";
            MahlerReport rep = check_mahler(mahler_a.f(), mahler_density);
            o.method = "MAHLER_CHECK";
            o.params["verdict"] = to_string(rep.verdict);
            o.params["grid_density"] = mahler_density;
            o.params["min_abs_f"] = to_double(rep.min_abs_f);
            o.params["min_abs_ftop"] = to_double(rep.min_abs_ftop);
            o.params["proven_by_coefficients"] = rep.proven_by_coefficients;
            if (rep.witness) {
                json w = json::array();
                for (const auto& c : *rep.witness) w.push_back(to_string(c));
                o.params["witness"] = w;
            }
            if (rep.verdict == MahlerVerdict::Likely)
                o.warnings.push_back("verdict LIKELY: positivity sampled, not proven");
        } else if (c_verify->got_subcommand(c_prod)) {
            as_json = prod_a.json_format();
            o.command = "verify product-rule";
            o.method = "PRODUCT_RULE";
            std::vector<MultiPoly> factors;
            for (const auto& t : prod_a.f_texts) factors.push_back(parse_poly(t, prod_a.p));
            MultiPoly g = prod_a.g();
            QuadratureRule rule = prod_a.rule();
            EngineOptions opts = prod_a.opts();

            ProductRuleReport zrep = product_rule_Z(factors, g, rule, opts);
            o.params["integral_rule"] = {{"lhs", zrep.lhs},
                                         {"rhs", zrep.rhs},
                                         {"discrepancy", zrep.discrepancy},
                                         {"combined_error", zrep.combined_error},
                                         {"consistent", zrep.consistent}};

            MultiPoly prod = MultiPoly::constant(prod_a.p, Rational(1));
            double rhs = 0.0, rhs_err = 0.0;
            for (const auto& fj : factors) {
                SpecialValue v = zeta_special(fj, g, 0, rule, opts);
                rhs += fj.degree() * v.value.real();
                rhs_err += fj.degree() * v.error_estimate;
                prod = prod * fj;
            }
            SpecialValue pv = zeta_special(prod, g, 0, rule, opts);
            double lhs = prod.degree() * pv.value.real();
            double lhs_err = prod.degree() * pv.error_estimate;
            double disc = std::abs(lhs - rhs);
            bool ok = disc <= lhs_err + rhs_err + 1e-9;
            o.params["series_rule"] = {{"lhs", lhs},
                                       {"rhs", rhs},
                                       {"discrepancy", disc},
                                       {"combined_error", lhs_err + rhs_err},
                                       {"consistent", ok}};
            o.value = std::max(zrep.discrepancy, disc);
            o.error_estimate = zrep.combined_error + lhs_err + rhs_err;
            if (!zrep.consistent || !ok)
                o.warnings.push_back("product rule discrepancy exceeds combined error");
        } else if (c_verify->got_subcommand(c_raabe)) {
            as_json = raabe_a.json_format();
            o.command = "verify raabe";
            o.method = "RAABE";
            RaabeReport rep = raabe_check(raabe_a.f(), raabe_a.g(), parse_complex(raabe_s),
                                          raabe_a.rule(), raabe_tol, raabe_a.opts());
            o.value = rep.discrepancy;
            o.error_estimate = rep.integral_error + rep.series_error;
            o.params["integral_side"] = complex_json(rep.integral_side);
            o.params["series_side"] = complex_json(rep.series_side);
            o.params["tol"] = rep.tol;
            o.params["pass"] = rep.pass;
            o.params["order"] = raabe_a.order;
            if (!rep.pass) o.warnings.push_back("Raabe identity discrepancy exceeds tolerance");
        }

        emit(o, as_json, out);
        return 0;
    } catch (const zetaspec::Error& e) {
        err << e.name() << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace zetaspec::cli
