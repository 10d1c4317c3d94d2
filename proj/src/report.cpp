#include "drg/report.hpp"

#include <sstream>

namespace drg {

Json json_exact(const Rat& r) {
    Json j;
    j["exact"] = rat_str(r);
    j["approx"] = rat_approx(r);
    return j;
}

namespace {

Json json_rat_list(const std::vector<Rat>& v) {
    Json arr = Json::array();
    for (const auto& x : v) arr.push_back(rat_str(x));
    return arr;
}

std::string verdict_str(Verdict v) {
    switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    default: return "inapplicable";
    }
}

Json certificate_json(const Certificate& c) {
    Json j;
    switch (c.kind) {
    case Certificate::Kind::none: j["kind"] = "none"; break;
    case Certificate::Kind::non_integer: j["kind"] = "non_integer"; break;
    case Certificate::Kind::divisibility: j["kind"] = "divisibility"; break;
    case Certificate::Kind::mod_pattern: j["kind"] = "mod_pattern"; break;
    case Certificate::Kind::text: j["kind"] = "text"; break;
    }
    if (!c.quantity.empty()) j["quantity"] = c.quantity;
    if (c.kind == Certificate::Kind::non_integer || c.kind == Certificate::Kind::mod_pattern)
        j["value"] = json_exact(c.value);
    if (c.kind == Certificate::Kind::divisibility) {
        j["divisor"] = c.divisor.str();
        j["dividend"] = c.dividend.str();
        j["remainder"] = c.remainder.str();
    }
    if (!c.detail.empty()) j["detail"] = c.detail;
    return j;
}

Json spectrum_json(const Spectrum& sp) {
    Json j;
    Json entries = Json::array();
    for (const auto& e : sp.rational) {
        Json row;
        row["theta"] = json_exact(e.theta);
        row["multiplicity"] = json_exact(e.multiplicity);
        entries.push_back(row);
    }
    j["rational"] = entries;
    if (sp.irrational) {
        Json ir;
        ir["factor"] = sp.irrational->factor.str();
        ir["total_multiplicity"] = json_exact(sp.irrational->total_multiplicity);
        Json ivs = Json::array();
        for (const auto& iv : sp.irrational->intervals) {
            Json b;
            b["lo"] = rat_str(iv.lo);
            b["hi"] = rat_str(iv.hi);
            ivs.push_back(b);
        }
        ir["isolating_intervals"] = ivs;
        j["irrational"] = ir;
    }
    return j;
}

} // namespace

Json params_report(const ClassicalParams& cp) {
    Json j;
    j["schema"] = kReportSchema;
    j["command"] = "params";
    j["D"] = cp.D;
    j["q"] = cp.q.str();
    j["alpha"] = rat_str(cp.alpha);
    j["beta"] = rat_str(cp.beta);
    try {
        IntersectionArray ia = intersection_array(cp);
        Json arr;
        std::vector<Rat> bs(ia.b.begin(), ia.b.begin() + cp.D);
        std::vector<Rat> cs(ia.c.begin() + 1, ia.c.begin() + cp.D + 1);
        arr["b"] = json_rat_list(bs);
        arr["c"] = json_rat_list(cs);
        arr["a"] = json_rat_list(ia.a);
        arr["k"] = json_rat_list(ia.k);
        arr["n"] = rat_str(ia.n);
        j["intersection_array"] = arr;
        j["spectrum"] = spectrum_json(spectrum(ia));
    } catch (const NonPositiveIntersectionNumber& e) {
        j["intersection_array"] = nullptr;
        j["array_error"] = e.what();
    }
    auto lc = local_eig_candidates(cp);
    Json eta;
    eta["values"] = json_rat_list({lc.eta[0], lc.eta[1], lc.eta[2], lc.eta[3]});
    eta["eta4_eq_eta2"] = lc.eta4_eq_eta2;
    eta["eta4_eq_eta3"] = lc.eta4_eq_eta3;
    j["eta"] = eta;
    if (cp.alpha != 0) {
        auto ls = srg_from_local(cp);
        Json srg;
        srg["n"] = json_exact(ls.srg.n);
        srg["k"] = json_exact(ls.srg.k);
        srg["lambda"] = json_exact(ls.srg.lambda);
        srg["mu"] = json_exact(ls.srg.mu);
        srg["r"] = json_exact(ls.srg.r);
        srg["s"] = json_exact(ls.srg.s);
        srg["forced_beta"] = rat_str(ls.forced_beta);
        srg["beta_matches"] = ls.beta_matches;
        j["local_srg"] = srg;
    }
    return j;
}

Json feasibility_report(const FeasibilityReport& rep) {
    Json j;
    j["schema"] = kReportSchema;
    j["command"] = "feasibility";
    if (rep.params) {
        j["D"] = rep.params->D;
        j["q"] = rep.params->q.str();
        j["alpha"] = rat_str(rep.params->alpha);
        j["beta"] = rat_str(rep.params->beta);
    }
    j["overall"] = rep.eliminated() ? "eliminated" : "feasible-so-far";
    Json checks = Json::array();
    for (const auto& c : rep.checks) {
        Json row;
        row["name"] = c.name;
        row["verdict"] = verdict_str(c.verdict);
        row["certificate"] = certificate_json(c.certificate);
        checks.push_back(row);
    }
    j["checks"] = checks;
    return j;
}

Json sweep_report(const SweepResult& res) {
    Json j;
    j["schema"] = kReportSchema;
    j["command"] = "sweep";
    j["q_max"] = res.q_max;
    j["D_max"] = res.D_max;
    j["cells"] = res.cells.size();
    auto cell_list = [](const std::vector<SweepCell>& cells) {
        Json arr = Json::array();
        for (const auto& c : cells) {
            Json row;
            row["q"] = c.q;
            row["D"] = c.D;
            row["kD_integer"] = c.kD_integer;
            row["fD_integer"] = c.fD_integer;
            arr.push_back(row);
        }
        return arr;
    };
    // both readings of the non-integrality claim are reported
    j["counterexamples_both_integral"] = cell_list(res.counterexamples);
    j["cells_with_any_integer"] = cell_list(res.single_integer_cells);
    return j;
}

Json graph_report(const Graph& g, const DrgCheck& check) {
    Json j;
    j["schema"] = kReportSchema;
    j["command"] = "graph";
    j["name"] = g.name();
    j["n"] = g.n();
    j["edges"] = g.edge_count();
    j["regular"] = g.is_regular();
    j["bipartite"] = g.is_bipartite();
    j["distance_regular"] = check.is_drg();
    if (check.is_drg()) {
        const auto& ia = *check.array;
        Json arr;
        std::vector<Rat> bs(ia.b.begin(), ia.b.begin() + ia.D);
        std::vector<Rat> cs(ia.c.begin() + 1, ia.c.begin() + ia.D + 1);
        arr["D"] = ia.D;
        arr["b"] = json_rat_list(bs);
        arr["c"] = json_rat_list(cs);
        arr["a"] = json_rat_list(ia.a);
        arr["k"] = json_rat_list(ia.k);
        j["intersection_array"] = arr;
    } else if (check.witness) {
        Json w;
        w["x"] = check.witness->x;
        w["y"] = check.witness->y;
        w["reason"] = check.witness->reason;
        j["witness"] = w;
    }
    return j;
}

Json modules_report(const TerwilligerContext& ctx, const Decomposition& dec) {
    Json j;
    j["schema"] = kReportSchema;
    j["command"] = "modules";
    j["graph"] = ctx.graph().name();
    j["x"] = ctx.base();
    j["mode"] = ctx.mode() == TMode::full ? "full" : "bipartite_quotient";
    j["eccentricity"] = ctx.eccentricity();
    j["n"] = ctx.n();
    j["total_dim"] = dec.total_dim;
    Json mods = Json::array();
    for (const auto& m : dec.modules) {
        Json row;
        row["endpoint"] = m.endpoint;
        row["diameter"] = m.diameter;
        Json dims = Json::array();
        for (int i = m.endpoint; i <= m.endpoint + m.diameter; ++i) dims.push_back(m.level_dim(i));
        row["level_dims"] = dims;
        row["dim"] = m.dim();
        row["thin"] = m.thin;
        row["irreducible"] = m.irreducible_verified ? "verified" : "unverified";
        if (m.local_eigenvalue) row["local_eigenvalue"] = json_exact(*m.local_eigenvalue);
        if (m.thin) row["level_products"] = json_rat_list(m.level_products);
        mods.push_back(row);
    }
    j["modules"] = mods;
    auto rep = thinness_report(dec);
    j["all_thin"] = rep.all_thin;
    return j;
}

Json uniform_report(const TerwilligerContext& ctx, const UniformVerdict& verdict) {
    Json j;
    j["schema"] = kReportSchema;
    j["command"] = "uniform";
    j["graph"] = ctx.graph().name();
    j["x"] = ctx.base();
    j["mode"] = ctx.mode() == TMode::full ? "full" : "bipartite_quotient";
    j["eccentricity"] = ctx.eccentricity();
    switch (verdict.outcome) {
    case UniformOutcome::uniform: j["outcome"] = "uniform"; break;
    case UniformOutcome::no_uniform: j["outcome"] = "no_uniform"; break;
    case UniformOutcome::undetermined_validation: j["outcome"] = "undetermined_validation"; break;
    }
    if (verdict.thin_screen_ran) j["all_tf_modules_thin"] = verdict.thin_screen_all_thin;
    if (verdict.solution) {
        const auto& sol = *verdict.solution;
        Json s;
        s["eps"] = sol.U.eps;
        s["e_minus"] = json_rat_list(sol.U.e_minus);
        s["e_plus"] = json_rat_list(sol.U.e_plus);
        s["f"] = json_rat_list(sol.f);
        Json lv = Json::array();
        for (const auto& l : sol.levels) {
            Json row;
            row["level"] = l.level;
            row["free_dims"] = l.homogeneous.size();
            row["eminus_forced_zero"] = l.eminus_forced_zero;
            row["eplus_forced_zero"] = l.eplus_forced_zero;
            lv.push_back(row);
        }
        s["level_solves"] = lv;
        s["cond_ii_whole_range"] = sol.U.cond_ii_whole_range();
        s["cond_ii_per_index"] = sol.U.cond_ii_per_index();
        j["solution"] = s;
    }
    if (verdict.witness) {
        Json w;
        w["level"] = verdict.witness->level;
        if (verdict.witness->vector) {
            Json vec = Json::array();
            for (const auto& x : *verdict.witness->vector) vec.push_back(rat_str(x));
            w["vector"] = vec;
        }
        Json fn = Json::array();
        for (std::size_t r = 0; r < verdict.witness->functional.rows(); ++r) {
            Json row = Json::array();
            for (std::size_t c = 0; c < verdict.witness->functional.cols(); ++c)
                row.push_back(rat_str(verdict.witness->functional(r, c)));
            fn.push_back(row);
        }
        w["functional"] = fn;
        w["reason"] = verdict.witness->reason;
        j["witness"] = w;
    }
    if (!verdict.validation_note.empty()) j["validation_note"] = verdict.validation_note;
    return j;
}

UniformSolution uniform_solution_from_json(const Json& j) {
    UniformSolution sol;
    sol.U.eps = j.at("eps").get<int>();
    for (const auto& s : j.at("e_minus")) sol.U.e_minus.push_back(parse_rat(s.get<std::string>()));
    for (const auto& s : j.at("e_plus")) sol.U.e_plus.push_back(parse_rat(s.get<std::string>()));
    for (const auto& s : j.at("f")) sol.f.push_back(parse_rat(s.get<std::string>()));
    return sol;
}

ReportFormat parse_format(const std::string& s) {
    if (s == "json") return ReportFormat::json;
    if (s == "csv") return ReportFormat::csv;
    if (s == "text") return ReportFormat::text;
    throw std::invalid_argument("unknown format: " + s);
}

namespace {

void flatten(const Json& j, const std::string& prefix, std::ostringstream& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    } else if (j.is_array()) {
        std::size_t i = 0;
        for (const auto& v : j) flatten(v, prefix + "[" + std::to_string(i++) + "]", out);
    } else {
        out << prefix << "," << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
}

std::string csv_render(const Json& j) {
    std::ostringstream out;
    out << "key,value\n";
    flatten(j, "", out);
    return out.str();
}

std::string text_render(const Json& j) {
    std::ostringstream out;
    std::string cmd = j.value("command", "");
    if (cmd == "params") {
        out << "classical parameters: D=" << j["D"].get<int>() << " q=" << j["q"].get<std::string>()
            << " alpha=" << j["alpha"].get<std::string>() << " beta=" << j["beta"].get<std::string>()
            << "\n";
        if (j.contains("intersection_array") && !j["intersection_array"].is_null()) {
            const auto& arr = j["intersection_array"];
            auto list = [&](const Json& a) {
                std::string s;
                for (std::size_t i = 0; i < a.size(); ++i)
                    s += (i ? ", " : "") + a[i].get<std::string>();
                return s;
            };
            out << "intersection array: {" << list(arr["b"]) << "; " << list(arr["c"]) << "}\n";
            out << "valencies k_i: [" << list(arr["k"]) << "]  n = " << arr["n"].get<std::string>()
                << "\n";
            if (j.contains("spectrum")) {
                out << "spectrum:";
                for (const auto& e : j["spectrum"]["rational"])
                    out << "  " << e["theta"]["exact"].get<std::string>() << "^"
                        << e["multiplicity"]["exact"].get<std::string>();
                if (j["spectrum"].contains("irrational"))
                    out << "  + irrational factor " +
                               j["spectrum"]["irrational"]["factor"].get<std::string>();
                out << "\n";
            }
        } else if (j.contains("array_error")) {
            out << "intersection array: infeasible (" << j["array_error"].get<std::string>()
                << ")\n";
        }
        const auto& eta = j["eta"]["values"];
        out << "eta: [" << eta[0].get<std::string>() << ", " << eta[1].get<std::string>() << ", "
            << eta[2].get<std::string>() << ", " << eta[3].get<std::string>() << "]\n";
        if (j["eta"]["eta4_eq_eta2"].get<bool>()) out << "coincidence: eta4 = eta2\n";
        if (j["eta"]["eta4_eq_eta3"].get<bool>()) out << "coincidence: eta4 = eta3\n";
        if (j.contains("local_srg")) {
            const auto& s = j["local_srg"];
            out << "local SRG: n=" << s["n"]["exact"].get<std::string>()
                << " k=" << s["k"]["exact"].get<std::string>()
                << " lambda=" << s["lambda"]["exact"].get<std::string>()
                << " mu=" << s["mu"]["exact"].get<std::string>()
                << " r=" << s["r"]["exact"].get<std::string>()
                << " s=" << s["s"]["exact"].get<std::string>() << "\n";
            out << "forced beta: " << s["forced_beta"].get<std::string>()
                << (s["beta_matches"].get<bool>() ? " (matches)" : " (differs)") << "\n";
        }
    } else if (cmd == "feasibility") {
        out << "parameters: D=" << j["D"].get<int>() << " q=" << j["q"].get<std::string>()
            << " alpha=" << j["alpha"].get<std::string>() << " beta=" << j["beta"].get<std::string>()
            << "\n";
        out << "overall: " << j["overall"].get<std::string>() << "\n";
        for (const auto& c : j["checks"]) {
            out << "  " << c["name"].get<std::string>() << ": " << c["verdict"].get<std::string>();
            const auto& cert = c["certificate"];
            if (cert["kind"] == "divisibility")
                out << "  [" << cert["detail"].get<std::string>() << "; remainder "
                    << cert["remainder"].get<std::string>() << "]";
            else if (cert["kind"] == "non_integer")
                out << "  [" << cert["quantity"].get<std::string>() << " = "
                    << cert["value"]["exact"].get<std::string>() << "]";
            else if (cert["kind"] == "mod_pattern")
                out << "  [" << cert["detail"].get<std::string>() << "]";
            out << "\n";
        }
    } else if (cmd == "sweep") {
        out << "sweep: q in [2, " << j["q_max"].get<long>() << "], D in [6, " << j["D_max"].get<int>()
            << "] with D = 0 (mod 6): " << j["cells"].get<std::size_t>() << " cells\n";
        out << "counterexamples (both k_D and f_D integral): "
            << j["counterexamples_both_integral"].size() << "\n";
        out << "cells with any integer value (strict reading): "
            << j["cells_with_any_integer"].size() << "\n";
        for (const auto& c : j["counterexamples_both_integral"])
            out << "  q=" << c["q"].get<long>() << " D=" << c["D"].get<int>() << "\n";
    } else if (cmd == "graph") {
        out << "graph: " << j["name"].get<std::string>() << "  n=" << j["n"].get<int>()
            << " edges=" << j["edges"].get<int>() << "\n";
        out << "regular: " << (j["regular"].get<bool>() ? "yes" : "no")
            << "  bipartite: " << (j["bipartite"].get<bool>() ? "yes" : "no") << "\n";
        if (j["distance_regular"].get<bool>()) {
            const auto& arr = j["intersection_array"];
            auto list = [&](const Json& a) {
                std::string s;
                for (std::size_t i = 0; i < a.size(); ++i)
                    s += (i ? "," : "") + a[i].get<std::string>();
                return s;
            };
            out << "distance-regular: yes  array {" << list(arr["b"]) << ";" << list(arr["c"])
                << "}\n";
        } else {
            out << "distance-regular: no";
            if (j.contains("witness")) out << "  (" << j["witness"]["reason"].get<std::string>() << ")";
            out << "\n";
        }
    } else if (cmd == "modules") {
        out << "graph: " << j["graph"].get<std::string>() << "  x=" << j["x"].get<int>()
            << "  mode=" << j["mode"].get<std::string>() << "\n";
        out << "modules (r, d, level dims, thin, irreducible):\n";
        for (const auto& m : j["modules"]) {
            out << "  r=" << m["endpoint"].get<int>() << " d=" << m["diameter"].get<int>() << " dims=[";
            for (std::size_t i = 0; i < m["level_dims"].size(); ++i)
                out << (i ? "," : "") << m["level_dims"][i].get<int>();
            out << "] " << (m["thin"].get<bool>() ? "thin" : "non-thin") << " "
                << m["irreducible"].get<std::string>();
            if (m.contains("local_eigenvalue"))
                out << " eta=" << m["local_eigenvalue"]["exact"].get<std::string>();
            if (m.contains("level_products")) {
                out << " pi=[";
                for (std::size_t i = 0; i < m["level_products"].size(); ++i)
                    out << (i ? "," : "") << m["level_products"][i].get<std::string>();
                out << "]";
            }
            out << "\n";
        }
        out << "total dim: " << j["total_dim"].get<int>() << " of n=" << j["n"].get<int>() << "\n";
        out << "all thin: " << (j["all_thin"].get<bool>() ? "yes" : "no") << "\n";
    } else if (cmd == "uniform") {
        std::string o = j["outcome"].get<std::string>();
        out << "graph: " << j["graph"].get<std::string>() << "  x=" << j["x"].get<int>()
            << "  mode=" << j["mode"].get<std::string>() << "\n";
        out << "uniform: " << (o == "uniform" ? "yes" : (o == "no_uniform" ? "no" : "undetermined"))
            << "\n";
        if (j.contains("all_tf_modules_thin"))
            out << "all T_f-modules thin: " << (j["all_tf_modules_thin"].get<bool>() ? "yes" : "no")
                << "\n";
        if (j.contains("solution")) {
            const auto& s = j["solution"];
            auto list = [&](const Json& a) {
                std::string r;
                for (std::size_t i = 0; i < a.size(); ++i) r += (i ? ", " : "") + a[i].get<std::string>();
                return r;
            };
            out << "e_minus: [" << list(s["e_minus"]) << "]\n";
            out << "e_plus:  [" << list(s["e_plus"]) << "]\n";
            out << "f:       [" << list(s["f"]) << "]\n";
        }
        if (j.contains("witness")) {
            out << "witness level: " << j["witness"]["level"].get<int>() << "  ("
                << j["witness"]["reason"].get<std::string>() << ")\n";
        }
        if (j.contains("validation_note"))
            out << "note: " << j["validation_note"].get<std::string>() << "\n";
    } else {
        out << j.dump(2) << "\n";
    }
    return out.str();
}

} // namespace

std::string render(const Json& report, ReportFormat fmt) {
    switch (fmt) {
    case ReportFormat::json: return report.dump(2) + "\n";
    case ReportFormat::csv: return csv_render(report);
    case ReportFormat::text: return text_render(report);
    }
    return {};
}

} // namespace drg
