// Optimal stratum boundaries under proportional allocation.
//
//   stratpath --input frame.csv --strata 4 --sample-size 100 [--json]

#include <iostream>

#include <CLI11.hpp>

#include "stratpath/report.hpp"

int main(int argc, char** argv) {
    stratpath::RunConfig cfg;
    std::string y_col;
    std::string dump_path;
    bool no_fpc = false;
    bool json = false;
    bool tab = false;

    CLI::App app{"Exact optimal stratification of a size variable under proportional allocation"};
    app.add_option("--input", cfg.input_path, "Delimited text file with a header row")->required();
    app.add_option("--x-col", cfg.x_col, "Stratification (size) variable column")->capture_default_str();
    app.add_option("--y-col", y_col, "Study variable column (defaults to the x column)");
    app.add_option("--strata", cfg.L, "Number of strata L")->required()->check(CLI::PositiveNumber);
    app.add_option("--sample-size", cfg.n, "Total sample size n")->required()->check(CLI::PositiveNumber);
    app.add_flag("--no-fpc", no_fpc, "Drop the finite population correction (sampling with replacement)");
    app.add_flag("--check-oracle", cfg.oracle_check, "Cross-check the optimum by exhaustive enumeration");
    app.add_option("--oracle-cap", cfg.oracle_cap, "Largest number of compositions the oracle may enumerate")
        ->capture_default_str();
    app.add_flag("--neyman", cfg.neyman, "Also report Neyman allocations for the optimal strata");
    app.add_flag("--json", json, "Write the report as JSON");
    app.add_flag("--tab", tab, "Input is tab-separated");
    app.add_option("--dump-arcs", dump_path, "Write the costed arc list (layer from to cost) to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (!y_col.empty()) cfg.y_col = y_col;
    if (!dump_path.empty()) cfg.dump_arcs_path = dump_path;
    cfg.fpc = !no_fpc;
    cfg.format = json ? stratpath::OutputFormat::Json : stratpath::OutputFormat::Text;
    cfg.delimiter = tab ? '\t' : ',';

    return stratpath::run(cfg, std::cout, std::cerr);
}
