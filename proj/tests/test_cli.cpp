#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qent/graph.hpp"

namespace {

std::string g_cli;

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    RunResult r;
    std::string cmd = g_cli + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    int st = pclose(pipe);
    if (WIFEXITED(st)) r.code = WEXITSTATUS(st);
    return r;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

// value of a "key: value" line in a text report
std::string field(const std::string& out, const std::string& key) {
    std::string needle = key + ": ";
    size_t pos = out.rfind("\n" + needle);
    pos = (pos == std::string::npos) ? (out.rfind(needle, 0) == 0 ? 0 : pos) : pos + 1;
    if (pos == std::string::npos) return "";
    size_t start = pos + needle.size();
    size_t end = out.find('\n', start);
    return out.substr(start, end == std::string::npos ? end : end - start);
}

double field_num(const std::string& out, const std::string& key) {
    std::string v = field(out, key);
    REQUIRE_FALSE(v.empty());
    return std::stod(v);
}

std::vector<std::string> lines_of(const std::string& out) {
    std::vector<std::string> lines;
    std::stringstream ss(out);
    std::string line;
    while (std::getline(ss, line)) lines.push_back(line);
    return lines;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    return parts;
}

const char* kProductState = "/tmp/qent_cli_product.json";
const char* kZeroZero = "/tmp/qent_cli_zerozero.json";
const char* kMaxMixed = "/tmp/qent_cli_maxmixed.json";
const char* kBellGraph = "/tmp/qent_cli_bellgraph.json";

void write_fixtures() {
    const char* r = "0.7071067811865476";
    write_file(kProductState,
               std::string("{\"kind\":\"pure\",\"dims\":[2,2,2],\"amplitudes\":[[") + r +
                   ",0],[0,0],[0,0],[" + r + ",0],[0,0],[0,0],[0,0],[0,0]]}");
    write_file(kZeroZero,
               "{\"kind\":\"pure\",\"dims\":[2,2],\"amplitudes\":[[1,0],[0,0],[0,0],[0,0]]}");
    write_file(kMaxMixed,
               "{\"kind\":\"mixed\",\"dims\":[2,2],\"matrix\":["
               "[[0.25,0],[0,0],[0,0],[0,0]],[[0,0],[0.25,0],[0,0],[0,0]],"
               "[[0,0],[0,0],[0.25,0],[0,0]],[[0,0],[0,0],[0,0],[0.25,0]]]}");

    qent::WeightedGraph g(qent::GraphKind::Real, qent::Dims{2, 2});
    qent::set_edge(g, 0, 3, -0.5);
    g.loops[0] = g.loops[3] = 1.0;
    write_file(kBellGraph, qent::graph_to_json(g));
}

}  // namespace

TEST_CASE("full tensor criterion verdicts in all three formats") {
    RunResult text = run_cli("--state builtin:bell separability");
    CHECK(text.code == 0);
    CHECK(field(text.out, "criterion") == "kyfan");
    CHECK(field(text.out, "status") == "Entangled");
    CHECK(field_num(text.out, "witness") == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(field_num(text.out, "bound") == doctest::Approx(1.0));

    RunResult js = run_cli("--state builtin:ghz:3 --format json separability");
    CHECK(js.code == 0);
    auto j = nlohmann::json::parse(js.out);
    CHECK(j["status"] == "Entangled");
    CHECK(j["witness"].get<double>() == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-9));
    CHECK(j["bound"].get<double>() == doctest::Approx(1.0));

    RunResult csv = run_cli("--state builtin:bell --format csv separability");
    CHECK(csv.code == 0);
    auto rows = lines_of(csv.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == "criterion,status,witness,bound");
    auto cells = split(rows[1], ',');
    REQUIRE(cells.size() == 4);
    CHECK(cells[0] == "kyfan");
    CHECK(cells[1] == "Entangled");
    CHECK(std::stod(cells[2]) == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("coarse grained partitions change the bound") {
    RunResult r = run_cli("--state builtin:ghz:3 --format json separability --partition '1,2|3'");
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["status"] == "Entangled");
    CHECK(j["bound"].get<double>() == doctest::Approx(std::sqrt(6.0)).epsilon(1e-12));
}

TEST_CASE("partial transpose criterion reports the cut") {
    RunResult bell = run_cli("--state builtin:bell separability --criterion ppt --partition '1|2'");
    CHECK(bell.code == 0);
    CHECK(field(bell.out, "status") == "Entangled");
    CHECK(field_num(bell.out, "witness") == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(field(bell.out, "partition") == "1|2");

    RunResult smolin =
        run_cli("--state builtin:smolin separability --criterion ppt --partition '1,2|3,4'");
    CHECK(smolin.code == 0);
    CHECK(field(smolin.out, "status") == "Inconclusive");
    CHECK(std::abs(field_num(smolin.out, "witness")) < 1e-9);
}

TEST_CASE("degree criterion flags the moved edge and respects the tolerance flag") {
    RunResult bell = run_cli("--state builtin:bell separability --criterion degree --partition '1|2'");
    CHECK(bell.code == 0);
    CHECK(field(bell.out, "status") == "Entangled");
    CHECK(field(bell.out, "degrees_preserved") == "no");

    RunResult prod =
        run_cli(std::string("--state ") + kZeroZero + " separability --criterion degree");
    CHECK(prod.code == 0);
    CHECK(field(prod.out, "status") == "Inconclusive");
    CHECK(field(prod.out, "degrees_preserved") == "yes");

    RunResult loose = run_cli(
        "--state builtin:bell separability --criterion degree --partition '1|2' --tolerance 10");
    CHECK(loose.code == 0);
    CHECK(field(loose.out, "degrees_preserved") == "yes");
}

TEST_CASE("sufficiency path can certify separability") {
    RunResult r = run_cli(std::string("--state ") + kMaxMixed + " separability --criterion sufficient");
    CHECK(r.code == 0);
    CHECK(field(r.out, "status") == "Separable");
    CHECK(std::abs(field_num(r.out, "witness")) < 1e-9);
}

TEST_CASE("measure reports the tensor norm and derived quantities") {
    RunResult r = run_cli("--state builtin:ghz:4 measure --normalize");
    CHECK(r.code == 0);
    CHECK(field_num(r.out, "tensor_norm") == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(field_num(r.out, "e_t") == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(field_num(r.out, "eps_t") == doctest::Approx(std::log2(3.0)).epsilon(1e-9));
    CHECK(field_num(r.out, "e_t_normalized") == doctest::Approx(1.0).epsilon(1e-9));

    // half-filled spin chain on four sites sits exactly at the ghz value
    RunResult h = run_cli("--state builtin:heisenberg:4:2 measure");
    CHECK(h.code == 0);
    CHECK(field_num(h.out, "e_t") == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("factorize splits a product file") {
    RunResult text = run_cli(std::string("--state ") + kProductState + " factorize");
    CHECK(text.code == 0);
    CHECK(field(text.out, "factor_count") == "2");
    CHECK(text.out.find("(1):") != std::string::npos);
    CHECK(text.out.find("(2 3):") != std::string::npos);

    RunResult js = run_cli(std::string("--state ") + kProductState + " --format json factorize");
    CHECK(js.code == 0);
    auto j = nlohmann::json::parse(js.out);
    CHECK(j["factor_count"] == 2);
    REQUIRE(j["factors"].size() == 2);
    CHECK(j["factors"][0]["subsystems"] == nlohmann::json::array({1}));
    CHECK(j["factors"][1]["subsystems"] == nlohmann::json::array({2, 3}));
    CHECK(j["factors"][1]["dims"] == nlohmann::json::array({2, 2}));
    double a0 = j["factors"][1]["amplitudes"][0][0].get<double>();
    CHECK(std::abs(a0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-9));

    RunResult whole = run_cli("--state builtin:ghz:3 factorize");
    CHECK(whole.code == 0);
    CHECK(field(whole.out, "factor_count") == "1");
}

TEST_CASE("graph subcommand covers the five actions") {
    RunResult dens = run_cli(std::string("--format json graph --graph ") + kBellGraph +
                             " --action to-density");
    CHECK(dens.code == 0);
    auto j = nlohmann::json::parse(dens.out);
    CHECK(j["kind"] == "mixed");
    CHECK(j["dims"] == nlohmann::json::array({2, 2}));
    CHECK(j["matrix"][0][0][0].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(j["matrix"][0][3][0].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(j["matrix"][1][1][0].get<double>() == doctest::Approx(0.0));

    RunResult text = run_cli(std::string("graph --graph ") + kBellGraph + " --action to-density");
    CHECK(text.code == 0);
    CHECK(lines_of(text.out).front() == "0.5+0i 0+0i 0+0i 0.5+0i");

    RunResult psd = run_cli(std::string("graph --graph ") + kBellGraph + " --action check-psd");
    CHECK(psd.code == 0);
    CHECK(field(psd.out, "screen") == "unknown");
    CHECK(field(psd.out, "definitive") == "psd");

    RunResult pur = run_cli(std::string("graph --graph ") + kBellGraph + " --action purity");
    CHECK(pur.code == 0);
    CHECK(field(pur.out, "pure") == "yes");
    CHECK(field_num(pur.out, "purity") == doctest::Approx(1.0).epsilon(1e-12));

    RunResult ent = run_cli(std::string("graph --graph ") + kBellGraph + " --action entropy");
    CHECK(ent.code == 0);
    CHECK(std::abs(field_num(ent.out, "entropy")) < 1e-9);

    RunResult pt = run_cli(std::string("--format json graph --graph ") + kBellGraph +
                           " --action pt --cut '1|2'");
    CHECK(pt.code == 0);
    auto jp = nlohmann::json::parse(pt.out);
    CHECK(jp["degrees_preserved"] == "no");
    REQUIRE(jp["graph"]["edges"].size() == 1);
    CHECK(jp["graph"]["edges"][0]["u"] == 1);
    CHECK(jp["graph"]["edges"][0]["v"] == 2);
}

TEST_CASE("reproduce emits the threshold tables") {
    RunResult r = run_cli("--format csv reproduce thresholds");
    CHECK(r.code == 0);
    auto rows = lines_of(r.out);
    REQUIRE(rows.size() == 9);
    CHECK(rows[0] == "family,n,pstar,bound,outcome");
    const double expect[] = {0.353553, 0.2,      0.176777, 0.111111,
                             0.306750, 0.301824, 0.302224, 0.304343};
    for (int i = 0; i < 8; ++i) {
        auto cells = split(rows[i + 1], ',');
        REQUIRE(cells.size() == 5);
        CHECK(cells[0] == (i < 4 ? "ghz" : "w"));
        CHECK(std::stoi(cells[1]) == 3 + i % 4);
        CHECK(std::stod(cells[2]) == doctest::Approx(expect[i]).epsilon(5e-4));
        CHECK(cells[4] == "crossed");
    }

    RunResult q = run_cli("--format csv reproduce qutrit-thresholds");
    CHECK(q.code == 0);
    auto qrows = lines_of(q.out);
    REQUIRE(qrows.size() == 3);
    CHECK(std::stod(split(qrows[1], ',')[2]) == doctest::Approx(0.228241).epsilon(2e-5));
    CHECK(std::stod(split(qrows[2], ',')[2]) == doctest::Approx(0.186358).epsilon(2e-5));

    RunResult m = run_cli("--format csv reproduce mixed-dims-threshold");
    CHECK(m.code == 0);
    auto mrows = lines_of(m.out);
    REQUIRE(mrows.size() == 2);
    CHECK(std::stod(split(mrows[1], ',')[2]) == doctest::Approx(0.230017).epsilon(2e-5));
}

TEST_CASE("reproduce covers the bound entangled mixtures") {
    RunResult s = run_cli("--format json reproduce smolin");
    CHECK(s.code == 0);
    auto j = nlohmann::json::parse(s.out);
    CHECK(j["status"] == "Entangled");
    CHECK(j["witness"].get<double>() == doctest::Approx(3.0).epsilon(1e-9));
    for (const char* key : {"ppt_1,2|3,4", "ppt_1,3|2,4", "ppt_1,4|2,3"}) {
        REQUIRE(j.contains(key));
        std::string v = j[key].get<std::string>();
        CHECK(v.find("Inconclusive") == 0);
        CHECK(v.find("min_eig") != std::string::npos);
    }

    RunResult d = run_cli("reproduce dur");
    CHECK(d.code == 0);
    CHECK(field(d.out, "status") == "Entangled");
    CHECK(field_num(d.out, "witness") == doctest::Approx(1.4).epsilon(1e-6));
}

TEST_CASE("reproduce emits the search and spin chain scans as csv") {
    RunResult g = run_cli("reproduce grover");
    CHECK(g.code == 0);
    auto grows = lines_of(g.out);
    REQUIRE(grows.size() == 11);
    CHECK(grows[0] == "x,value");
    const double ets[] = {0.0,          0.4628163053, 1.0603025723, 1.2545007604,
                          0.9477108774, 0.3058035874, 0.0357546590, 0.7075364089,
                          1.4429771011, 1.7823474001};
    for (int k = 0; k < 10; ++k) {
        auto cells = split(grows[k + 1], ',');
        REQUIRE(cells.size() == 2);
        CHECK(std::stod(cells[0]) == doctest::Approx(double(k)));
        CHECK(std::abs(std::stod(cells[1]) - ets[k]) < 1e-6);
    }

    RunResult g4 = run_cli("reproduce grover --n 4 --target 1111");
    CHECK(g4.code == 0);
    CHECK(lines_of(g4.out).size() == 8);  // header plus iterations 0..6

    RunResult h = run_cli("reproduce heisenberg --n 4");
    CHECK(h.code == 0);
    auto hrows = lines_of(h.out);
    REQUIRE(hrows.size() == 6);
    CHECK(std::stod(split(hrows[3], ',')[1]) == doctest::Approx(2.0).epsilon(1e-9));

    RunResult wg = run_cli("reproduce wghz");
    CHECK(wg.code == 0);
    auto wrows = lines_of(wg.out);
    REQUIRE(wrows.size() == 102);
    CHECK(std::stod(split(wrows[1], ',')[1]) == doctest::Approx(0.9148542155).epsilon(1e-8));
    CHECK(std::stod(split(wrows[101], ',')[1]) == doctest::Approx(1.0).epsilon(1e-9));

    RunResult gs = run_cli("reproduce ghzscan --n 3");
    CHECK(gs.code == 0);
    auto srows = lines_of(gs.out);
    REQUIRE(srows.size() == 102);
    CHECK(std::abs(std::stod(split(srows[1], ',')[1])) < 1e-9);
    CHECK(std::stod(split(srows[51], ',')[1]) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("exit codes separate parse errors from domain errors") {
    write_file("/tmp/qent_cli_malformed.json", "{nope");
    CHECK(run_cli("--state /tmp/qent_cli_malformed.json separability").code == 2);

    write_file("/tmp/qent_cli_unnorm.json",
               "{\"kind\":\"pure\",\"dims\":[2],\"amplitudes\":[[1,0],[1,0]]}");
    CHECK(run_cli("--state /tmp/qent_cli_unnorm.json separability").code == 3);

    write_file("/tmp/qent_cli_count.json",
               "{\"kind\":\"pure\",\"dims\":[2,2],\"amplitudes\":[[1,0],[0,0],[0,0]]}");
    CHECK(run_cli("--state /tmp/qent_cli_count.json separability").code == 3);

    write_file("/tmp/qent_cli_nonpsd.json",
               "{\"kind\":\"mixed\",\"dims\":[2],\"matrix\":[[[2,0],[0,0]],[[0,0],[-1,0]]]}");
    CHECK(run_cli("--state /tmp/qent_cli_nonpsd.json separability").code == 3);

    CHECK(run_cli("--state builtin:nosuch separability").code == 2);
    CHECK(run_cli("--state builtin:ghz:x separability").code == 2);
    CHECK(run_cli("--state builtin:ghz:1 separability").code == 3);
    CHECK(run_cli("--state builtin:smolin measure").code == 3);
    CHECK(run_cli("--state builtin:smolin factorize").code == 3);
    CHECK(run_cli("separability").code == 2);  // no state given
    CHECK(run_cli("--state builtin:bell separability --criterion nosuch").code == 2);
    CHECK(run_cli("--state builtin:bell separability --criterion ppt --partition '1|'").code == 2);
    CHECK(run_cli("graph --graph /tmp/qent_cli_missing.json --action purity").code == 2);
    CHECK(run_cli("reproduce grover --n 3 --target abc").code == 3);
    CHECK(run_cli("").code == 2);  // a subcommand is required

    RunResult help = run_cli("--help");
    CHECK(help.code == 0);
    CHECK(help.out.find("separability") != std::string::npos);
    CHECK(help.out.find("reproduce") != std::string::npos);
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: test_cli <path-to-cli> [doctest args]\n");
        return 1;
    }
    g_cli = argv[1];
    write_fixtures();
    doctest::Context ctx;
    ctx.applyCommandLine(argc - 1, argv + 1);
    return ctx.run();
}
