#include "stratpath/report.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "stratpath/error.hpp"
#include "stratpath/graph.hpp"

namespace stratpath {

namespace {

bool same_variance(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return std::abs(a - b) <= 1e-9 * scale;
}

std::vector<double> neyman_for(const StratificationSolution& sol) {
    std::vector<std::size_t> n_pops;
    std::vector<double> s;
    for (const auto& st : sol.strata) {
        n_pops.push_back(st.n_pop);
        s.push_back(std::sqrt(st.s2.value_or(0.0)));
    }
    return allocate_neyman(n_pops, s, sol.n);
}

std::string fmt_num(double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

}  // namespace

bool verify_with_oracle(const StratificationSolution& sol, const FrequencyTable& ft, const ProblemSpec& spec,
                        std::size_t cap) {
    const SolutionCount count = count_solutions(ft.K(), spec.L);
    if (!count.feasible || count.m > cap) return false;
    const StratificationSolution ref = brute_force_solve(ft, spec, cap);
    if (ref.nodes != sol.nodes || !same_variance(ref.variance, sol.variance)) {
        std::ostringstream msg;
        msg << std::setprecision(17) << "solver and exhaustive oracle disagree: variance " << sol.variance << " vs "
            << ref.variance;
        throw Error(ErrorKind::InternalConsistency, msg.str());
    }
    return true;
}

std::string emit_json(const StratificationSolution& sol, const RunInfo& info) {
    nlohmann::ordered_json j;
    j["N"] = sol.N;
    j["K"] = sol.K;
    j["L"] = sol.L;
    j["n"] = sol.n;
    j["fpc"] = sol.fpc;
    j["boundaries"] = sol.boundaries;
    auto strata = nlohmann::ordered_json::array();
    for (std::size_t h = 0; h < sol.strata.size(); ++h) {
        const auto& st = sol.strata[h];
        nlohmann::ordered_json s;
        s["N_h"] = st.n_pop;
        s["S2_h"] = st.s2 ? nlohmann::ordered_json(*st.s2) : nlohmann::ordered_json(nullptr);
        s["n_h_frac"] = st.n_h_frac;
        s["n_h"] = st.n_h;
        if (info.neyman) s["n_h_neyman"] = (*info.neyman)[h];
        strata.push_back(std::move(s));
    }
    j["strata"] = std::move(strata);
    j["variance"] = sol.variance;
    j["cv"] = sol.cv ? nlohmann::ordered_json(*sol.cv) : nlohmann::ordered_json(nullptr);
    j["unit_cost"] = sol.total_unit_cost;
    j["elapsed_s"] = sol.elapsed_s;
    j["oracle_checked"] = info.oracle_checked;
    return j.dump(2) + "\n";
}

std::string emit_text(const StratificationSolution& sol, const RunInfo& info) {
    std::ostringstream os;
    os << "N = " << sol.N << "   |I| = " << sol.K << "   L = " << sol.L << "   n = " << sol.n
       << "   fpc = " << (sol.fpc ? "yes" : "no") << '\n';
    os << "CPU (s)    = " << std::fixed << std::setprecision(6) << sol.elapsed_s << '\n';
    os << "CV (%)     = ";
    if (sol.cv) os << std::setprecision(2) << *sol.cv << '\n';
    else os << "undefined\n";
    os.unsetf(std::ios::floatfield);
    os << std::setprecision(10);
    os << "variance   = " << sol.variance << '\n';
    os << "unit cost  = " << sol.total_unit_cost << '\n';
    os << "boundaries =";
    if (sol.boundaries.empty()) os << " (none)";
    for (double b : sol.boundaries) os << ' ' << b;
    os << "\n\n";

    constexpr int label_w = 14;
    constexpr int col_w = 13;
    auto row = [&](const std::string& label, auto cell) {
        os << std::left << std::setw(label_w) << label << std::right;
        for (std::size_t h = 0; h < sol.strata.size(); ++h) os << std::setw(col_w) << cell(h);
        os << '\n';
    };
    row("Stratum", [&](std::size_t h) { return std::to_string(h + 1); });
    row("upper x", [&](std::size_t h) { return fmt_num(sol.strata[h].upper_x); });
    row("Nh", [&](std::size_t h) { return std::to_string(sol.strata[h].n_pop); });
    row("nh", [&](std::size_t h) { return std::to_string(sol.strata[h].n_h); });
    row("nh exact", [&](std::size_t h) { return fmt_num(sol.strata[h].n_h_frac); });
    if (info.neyman) row("nh Neyman", [&](std::size_t h) { return fmt_num((*info.neyman)[h]); });
    row("S2_h", [&](std::size_t h) {
        const auto& s2 = sol.strata[h].s2;
        return s2 ? fmt_num(*s2) : std::string("-");
    });
    row("Nh*S2_h", [&](std::size_t h) { return fmt_num(sol.strata[h].unit_cost); });
    row("Y total", [&](std::size_t h) { return fmt_num(sol.strata[h].y_total); });
    if (info.oracle_checked) os << "\nexhaustive oracle: agrees\n";
    return os.str();
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        LoadOptions opts;
        opts.x_column = cfg.x_col;
        opts.y_column = cfg.y_col;
        opts.delimiter = cfg.delimiter;
        const Population pop = load_population_file(cfg.input_path, opts);
        const FrequencyTable ft = build_frequency_table(pop);

        ProblemSpec spec;
        spec.L = cfg.L;
        spec.n = cfg.n;
        spec.N = pop.size();
        spec.fpc = cfg.fpc;

        const StratificationSolution sol = solve_problem(ft, spec);

        RunInfo info;
        if (cfg.oracle_check) {
            info.oracle_checked = verify_with_oracle(sol, ft, spec, cfg.oracle_cap);
            if (!info.oracle_checked) {
                err << "stratpath: warning: oracle check skipped, " << count_solutions(ft.K(), spec.L).m.str()
                    << " compositions (cap " << cfg.oracle_cap << ")\n";
            }
        }
        if (cfg.neyman) {
            try {
                info.neyman = neyman_for(sol);
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::DegenerateAllocation) throw;
                err << "stratpath: warning: " << e.what() << '\n';
            }
        }
        if (cfg.dump_arcs_path && spec.L >= 2) {
            std::ofstream dump(*cfg.dump_arcs_path);
            if (!dump) throw Error(ErrorKind::Io, "cannot write arc dump to '" + *cfg.dump_arcs_path + "'");
            dump_arcs(attach_costs(build_layered_graph(ft.K(), spec.L), build_prefix_moments(ft)), dump);
        }

        for (const auto& w : sol.warnings) err << "stratpath: warning: " << w << '\n';
        out << (cfg.format == OutputFormat::Json ? emit_json(sol, info) : emit_text(sol, info));
        return 0;
    } catch (const Error& e) {
        err << "stratpath: " << to_string(e.kind()) << " error: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        err << "stratpath: internal error: " << e.what() << '\n';
        return 4;
    }
}

}  // namespace stratpath
