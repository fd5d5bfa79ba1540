#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rankp/run.hpp"

namespace {

int config_error(const std::string& msg) {
    std::cerr << "rankp: " << msg << "\n";
    return 2;
}

bool parse_window(const std::string& s, int* lo, int* hi) {
    size_t colon = s.find(':');
    if (colon == std::string::npos) return false;
    try {
        size_t used = 0;
        *lo = std::stoi(s.substr(0, colon), &used);
        if (used != colon) return false;
        std::string tail = s.substr(colon + 1);
        *hi = std::stoi(tail, &used);
        if (used != tail.size()) return false;
    } catch (const std::exception&) {
        return false;
    }
    return *lo <= *hi;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rank-p torsor calculator: boundary classification, conductors and "
                 "residues, Cartier checks, node conditions, lifts, filtration levels"};
    std::string path;
    rankp::cli::RunOptions opt;
    std::string window = "-64:64";
    std::string extend = "off";
    app.add_option("document", path, "document file, or '-' for stdin")->required();
    app.add_option("--prec", opt.prec, "working precision used when the header has no N line")
        ->capture_default_str();
    app.add_option("--window", window, "T-window LO:HI used when the header has no window line")
        ->capture_default_str();
    app.add_option("--extend", extend, "ramified base change for classification: off, auto, or c=K")
        ->capture_default_str();
    app.add_option("--seed", opt.seed, "seed for randomized property directives")
        ->capture_default_str();
    app.add_flag("--json", opt.json, "emit newline-delimited JSON reports");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (!parse_window(window, &opt.window_lo, &opt.window_hi))
        return config_error("bad --window (expected LO:HI with LO <= HI)");
    if (opt.prec < 1) return config_error("--prec must be at least 1");
    if (extend == "auto") {
        opt.extend = rankp::cli::RunOptions::Extend::automatic;
    } else if (extend.rfind("c=", 0) == 0) {
        long c = 0;
        try {
            c = std::stol(extend.substr(2));
        } catch (const std::exception&) {
            c = 0;
        }
        if (c < 1) return config_error("bad --extend factor (expected c=K with K >= 1)");
        opt.extend = rankp::cli::RunOptions::Extend::manual;
        opt.extend_c = static_cast<uint32_t>(c);
    } else if (extend != "off") {
        return config_error("bad --extend (expected off, auto, or c=K)");
    }

    std::string text;
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        text = buf.str();
    } else {
        std::ifstream in(path);
        if (!in) return config_error("cannot open '" + path + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }

    try {
        rankp::cli::Document doc = rankp::cli::parse_document(text);
        rankp::cli::RunResult res = rankp::cli::run_document(doc, opt);
        for (const std::string& line : res.lines) std::cout << line << "\n";
        return res.exit_code;
    } catch (const rankp::error& e) {
        return config_error(e.what());
    }
}
