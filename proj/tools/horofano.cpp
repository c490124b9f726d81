#include "horofano/io.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Kahler-Einstein and soliton computations for Fano horospherical manifolds"};
    app.set_version_flag("--version", std::string(horofano::kToolVersion));

    horofano::RunRequest req;
    app.add_option("command", req.command, "validate | invariants | soliton | ricci-bound | continuity | all")
        ->required()
        ->check(CLI::IsMember({"validate", "invariants", "soliton", "ricci-bound", "continuity", "all"}));
    app.add_option("--input", req.input, "problem JSON")->required();
    app.add_option("--out", req.out, "report JSON");
    app.add_option("--trace", req.trace, "continuity trace CSV (xi = 0; the soliton sweep goes to <name>.soliton.csv)");
    app.add_option("--tol", req.tol, "soliton tolerance, relative to V");
    app.add_option("--grid", req.grid, "continuity grid points");
    app.add_option("--box", req.box, "continuity box half-width L (0 = automatic)");
    app.add_option("--t0", req.t0, "continuity start parameter");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : horofano::kExitUsage;
    }
    return horofano::run_cli(req, std::cout, std::cerr);
}
