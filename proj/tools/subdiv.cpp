#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "subdiv/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Exact invariants of Eulerian posets, formal subdivisions and lattice polytopes"};
    app.require_subcommand(1, 1);

    subdiv::JobSpec spec;
    std::string format = "text";
    const std::map<std::string, subdiv::OutputFormat> formats = {
        {"text", subdiv::OutputFormat::text}, {"json", subdiv::OutputFormat::json}, {"svg", subdiv::OutputFormat::svg}};

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format,-f", format, "Output format")->check(CLI::IsMember({"text", "json", "svg"}));
        sub->add_flag("--regular", spec.regular, "Treat the subdivision as regular");
    };
    auto add_input = [&](const char* name, const char* help) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("input", spec.input, "Input JSON file")->required();
        add_common(sub);
        return sub;
    };

    add_input("gpoly", "g-polynomial of an Eulerian poset");
    add_input("hpoly", "h-polynomial of a lower Eulerian poset");
    add_input("local-h", "Local h-polynomial of a subdivision");
    add_input("mixed-h", "Mixed h-polynomial of a subdivision");
    for (const char* name : {"hstar", "local-hstar", "mixed-hstar"}) {
        CLI::App* sub = add_input(name, "Ehrhart invariant of a lattice polytope");
        sub->add_flag("--oracle", spec.oracle, "Cross-check against the box point count of a simplex");
    }
    add_input("limit-mixed", "Limit mixed h*-polynomial and its local version");
    add_input("refined", "Refined limit mixed h*-polynomial");
    CLI::App* diamond = add_input("diamond", "Diamonds of a lattice subdivision");
    diamond->add_option("--kind", spec.diamond, "hstar, local, r-local or all")
        ->check(CLI::IsMember({"all", "hstar", "local", "r-local"}));
    diamond->add_option("--layer", spec.layer, "Single r-local table");
    add_input("check", "Run the property battery and print a line per property");

    CLI::App* bary = app.add_subcommand("bary", "Barycentric subdivision of the boundary of a simplex");
    bary->add_option("rank", spec.input, "Rank n of the Boolean algebra")->required();
    add_common(bary);

    CLI::App* corpus = app.add_subcommand("corpus", "Check every JSON case in a directory");
    corpus->add_option("dir", spec.input, "Corpus directory")->required();
    add_common(corpus);

    CLI::App* generate = app.add_subcommand("generate", "Write random regular subdivision cases");
    generate->add_option("dir", spec.input, "Output directory")->required();
    generate->add_option("--seed", spec.seed, "Random seed");
    generate->add_option("--count", spec.count, "Number of cases")->check(CLI::Range(1, 1000));

    CLI11_PARSE(app, argc, argv);

    spec.command = app.get_subcommands().front()->get_name();
    spec.format = formats.at(format);
    const subdiv::JobResult result = subdiv::run(spec);
    std::cout << result.out;
    std::cerr << result.err;
    return result.exit_code;
}
