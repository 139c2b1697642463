// End-to-end checks of the command-line tool: exit-code contract,
// deterministic reports, witness/eval round trip. Takes the binary path
// as argv[1].

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

int g_failures = 0;
std::string g_bin;
fs::path g_dir;

void expect(bool ok, const std::string& what) {
    if (ok) {
        std::cout << "  ok: " << what << "\n";
    } else {
        ++g_failures;
        std::cout << "  FAILED: " << what << "\n";
    }
}

int run(const std::string& args) {
    const std::string cmd = g_bin + " " + args + " > " + (g_dir / "stdout.txt").string() +
                            " 2> " + (g_dir / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string out_text() { return slurp(g_dir / "stdout.txt"); }

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: test_cli <path-to-lptri-binary>\n";
        return 2;
    }
    g_bin = argv[1];
    g_dir = fs::temp_directory_path() / "lptri_cli_test";
    fs::create_directories(g_dir);

    const auto fixb = g_dir / "fixb.json";
    write_text(fixb, R"({"weights":["1","1"],"f":["1","1"],"g":["1","0"],"p":"4"})");

    {
        std::cout << "eval on the tight two-atom pair\n";
        const int code = run("eval --input " + fixb.string());
        expect(code == 0, "exit code 0");
        const auto text = out_text();
        expect(text.find("id,regime,lhs,rhs,margin,verdict,tier") == 0, "csv header first");
        expect(text.find("5.666666666666667") != std::string::npos, "ratio 17/3 appears");
        expect(text.find("sandwich_lower") != std::string::npos &&
                   text.find("sandwich_upper") != std::string::npos,
               "sandwich rows present");
        expect(text.find("EqualityWithinTol") != std::string::npos, "equality rows present");
        expect(text.find("ConfirmedViolation") == std::string::npos, "no violations");
    }

    {
        std::cout << "verify is byte-identical across reruns\n";
        const auto csv1 = g_dir / "verify1.csv";
        const auto csv2 = g_dir / "verify2.csv";
        int code = run("verify --p 4 --trials 5 --seed 7 --output " + csv1.string());
        expect(code == 0, "first run exit 0");
        code = run("verify --p 4 --trials 5 --seed 7 --output " + csv2.string());
        expect(code == 0, "second run exit 0");
        expect(slurp(csv1) == slurp(csv2), "identical csv bytes");
        expect(slurp(csv1).find("id,regime,") == 0, "header present");
        const int other = run("verify --p 4 --trials 5 --seed 8 --output " + csv2.string());
        expect(other == 0, "third run exit 0");
        expect(slurp(csv1) != slurp(csv2), "different seed changes the report");
    }

    {
        std::cout << "witness emits a pair file eval accepts unchanged\n";
        const auto wfile = g_dir / "witness.json";
        int code = run("witness --alpha 0.5 --p 3 --output " + wfile.string());
        expect(code == 0, "witness exit 0");
        expect(out_text().find("mooney_bound") != std::string::npos, "mooney row on stdout");
        expect(out_text().find("EqualityWithinTol") != std::string::npos,
               "witness achieves equality");
        const auto wtext = slurp(wfile);
        expect(wtext.find("\"f\"") != std::string::npos, "pair file written");

        code = run("eval --input " + wfile.string());
        expect(code == 0, "eval accepts the witness file");

        // alpha = 0.5 means f = g
        expect(wtext.find("\"1\"") != std::string::npos, "unit values");
    }

    {
        std::cout << "witness at alpha = 0.4, p = 4 hits t = sqrt(1/2)\n";
        const auto wfile = g_dir / "witness04.json";
        const int code = run("witness --alpha 0.4 --p 4 --output " + wfile.string());
        expect(code == 0, "exit 0");
        expect(slurp(wfile).find("0.7071067811865") != std::string::npos, "t = 0.70711...");
    }

    {
        std::cout << "compare finds witnesses in both directions\n";
        const auto stats = g_dir / "stats.json";
        const int code =
            run("compare --p 4 --trials 4000 --seed 5 --atoms 8 --output " + stats.string());
        expect(code == 0, "exit 0");
        const auto text = slurp(stats);
        expect(text.find("\"win_counts\"") != std::string::npos, "win counts present");
        expect(text.find("sandwich_beats_mooney") != std::string::npos, "witness keys present");
    }

    {
        std::cout << "search subcommand\n";
        const auto best = g_dir / "best.json";
        const int code = run("search --spec max_gap_sandwich_minus_mooney --p 4 --atoms 6 "
                             "--budget 800 --seed 2 --output " +
                             best.string());
        expect(code == 0, "exit 0");
        expect(out_text().find("best_value") != std::string::npos, "summary on stdout");
        const int code2 = run("eval --input " + best.string());
        expect(code2 == 0, "eval accepts the search output");
    }

    {
        std::cout << "sequence subcommand\n";
        const auto table = g_dir / "seq.csv";
        const int code = run("sequence --spec geometric:r=0.5 --p 2 --nmax 16 --atoms 1 "
                             "--output " +
                             table.string());
        expect(code == 0, "exit 0");
        const auto text = slurp(table);
        expect(text.find("n,lhs,sum_norms,cross_sum,cross_norm") == 0, "table header");
        expect(std::count(text.begin(), text.end(), '\n') == 17, "16 rows plus header");
    }

    {
        std::cout << "sequence with an explicit family file\n";
        const auto fam = g_dir / "family.json";
        write_text(fam, R"({"weights":["1","1"],"functions":[["1","0"],["0","1"],["0.5","0.5"]],"p":"1.5"})");
        const int code = run("sequence --spec explicit --p 1.5 --input " + fam.string());
        expect(code == 0, "exit 0");
        const auto text = out_text();
        expect(text.find("n,lhs,") == 0, "table on stdout");
        expect(std::count(text.begin(), text.end(), '\n') == 4, "3 rows plus header");
    }

    {
        std::cout << "usage and input errors exit 2\n";
        expect(run("eval --input " + (g_dir / "missing.json").string()) == 2,
               "missing file is exit 2");
        const auto bad = g_dir / "bad.json";
        write_text(bad, R"({"weights":["1"],"f":["1"],"g":["x"],"p":"4"})");
        expect(run("eval --input " + bad.string()) == 2, "malformed number is exit 2");
        write_text(bad, R"({"weights":["1"],"f":["1"],"p":"4"})");
        expect(run("eval --input " + bad.string()) == 2, "missing field is exit 2");
        expect(run("nonsense") == 2, "unknown subcommand is exit 2");
        expect(run("witness --alpha 0.9 --p 4") == 2, "alpha out of range is exit 2");
        expect(run("eval") == 2, "missing required flag is exit 2");
    }

    std::cout << (g_failures == 0 ? "ALL CLI CHECKS PASSED\n"
                                  : std::to_string(g_failures) + " CLI CHECKS FAILED\n");
    return g_failures == 0 ? 0 : 1;
}
