#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "fdt/constraints.hpp"
#include "fdt/program.hpp"
#include "fdt/replay.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw fdt::Error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::vector<fdt::TraceEvent> load_log(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw fdt::Error("cannot open " + path);
    return fdt::parse_log(in);
}

int cmd_run(const std::string& program, const std::string& trace_out,
            std::size_t max_solutions, bool self_check) {
    fdt::Kernel kernel;
    fdt::RunResult result =
        fdt::run_program_text(kernel, read_file(program), max_solutions);

    if (!trace_out.empty()) {
        std::ofstream out(trace_out, std::ios::binary);
        if (!out) throw fdt::Error("cannot write " + trace_out);
        fdt::write_log(out, kernel.log().events());
    }

    if (result.failed)
        std::cout << "fail\n";
    else
        for (const std::string& line : result.solutions)
            std::cout << line << "\n";

    if (self_check) {
        std::vector<fdt::Violation> violations =
            fdt::check_log(kernel.log().events());
        for (const fdt::Violation& v : violations)
            std::cerr << "violation at event " << v.event_id << ": "
                      << v.message << "\n";
        if (!violations.empty()) return 1;
    }
    return 0;
}

int cmd_query(const std::string& log_path, const std::string& selector_text) {
    std::vector<fdt::TraceEvent> log = load_log(log_path);
    fdt::Selector sel = fdt::parse_selector(selector_text);
    for (const fdt::TraceEvent& e : fdt::get_events(log, sel))
        std::cout << fdt::serialize_event(e) << "\n";
    return 0;
}

int cmd_check(const std::string& log_path) {
    std::vector<fdt::TraceEvent> log = load_log(log_path);
    std::vector<fdt::Violation> violations = fdt::check_log(log);
    for (const fdt::Violation& v : violations)
        std::cout << "violation at event " << v.event_id << ": " << v.message
                  << "\n";
    return violations.empty() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-domain solver with a structured execution trace"};
    app.require_subcommand(1);

    std::string program_path;
    std::string trace_out;
    std::size_t max_solutions = 1;
    bool self_check = false;
    CLI::App* run = app.add_subcommand("run", "run a program and trace it");
    run->add_option("program", program_path, "program file")->required();
    run->add_option("--trace-out", trace_out, "write the trace log here");
    run->add_option("--max-solutions", max_solutions,
                    "labeling solutions to collect (default 1)");
    run->add_flag("--check", self_check, "validate the produced log");

    std::string log_path;
    std::string selector_text;
    CLI::App* query = app.add_subcommand("query", "select events from a log");
    query->add_option("log", log_path, "trace log file")->required();
    query->add_option("selector", selector_text,
                      "event id, event name or pattern with _ wildcards")
        ->required();

    std::string check_path;
    CLI::App* check = app.add_subcommand("check", "validate a trace log");
    check->add_option("log", check_path, "trace log file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return cmd_run(program_path, trace_out, max_solutions, self_check);
        if (query->parsed()) return cmd_query(log_path, selector_text);
        if (check->parsed()) return cmd_check(check_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
