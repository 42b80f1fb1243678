#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "pets/certifier.hpp"
#include "pets/oracle.hpp"
#include "support.hpp"

using namespace pets;

namespace {

const std::string kCli = PETS_CLI_PATH;
const std::string kData = PETS_TEST_DATA;

struct Run {
    int status = -1;
    std::string out;
};

Run run(const std::string& args, const std::string& env = {}) {
    std::string cmd = env + (env.empty() ? "" : " ") + kCli + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::string data(const std::string& name) { return kData + "/" + name; }

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string theory_arg() { return "--theory " + data("ax-double.thy"); }

}  // namespace

TEST_CASE("check exit statuses") {
    CHECK(run("check " + theory_arg() + " --derivation " + data("worked.drv")).status == 0);
    CHECK(run("check --theory " + data("overlap.thy") + " --derivation " + data("refl.drv")).status == 2);
    auto broken = run("check " + theory_arg() + " --derivation " + data("broken-trans.drv"));
    CHECK(broken.status == 3);
    CHECK(broken.out.find("transitivity middle-term mismatch") != std::string::npos);
    CHECK(run("check " + theory_arg() + " --derivation " + data("syntax-error.drv")).status == 1);
    CHECK(run("check " + theory_arg() + " --derivation " + data("missing.drv")).status == 1);
    CHECK(run("check --bogus").status == 1);
}

TEST_CASE("check report") {
    auto r = run("check " + theory_arg() + " --derivation " + data("worked.drv") + " " + data("refl.drv") +
                 " --jobs 2");
    CHECK(r.status == 0);
    CHECK(r.out == "file: " + data("worked.drv") +
                       "\nstatus: ok\nend: (d (s0 eps)) = (s0 (s0 eps))\nlength: 50\ndepth: 3\nvnf: yes\n"
                       "file: " + data("refl.drv") + "\nstatus: ok\nend: eps = eps\nlength: 3\ndepth: 1\nvnf: yes\n");
}

TEST_CASE("certify matches the library and the golden certificate") {
    auto r = run("certify " + theory_arg() + " --derivation " + data("worked.drv"));
    CHECK(r.status == 0);
    auto ax = parse_theory(slurp(data("ax-double.thy")));
    auto d = parse_derivation(slurp(data("worked.drv")), ax);
    CHECK(r.out == certificate_to_json(certify(d, ax)).dump(2) + "\n");
    CHECK(r.out == slurp(data("worked.cert.json")));
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["sigma2"].size() == 2);
}

TEST_CASE("certify reflexivity and rejections") {
    auto refl = run("certify " + theory_arg() + " --derivation " + data("refl.drv"));
    CHECK(refl.status == 0);
    auto j = nlohmann::json::parse(refl.out);
    CHECK(j["sigma1"].empty());
    CHECK(j["sigma2"].empty());
    CHECK(run("certify " + theory_arg() + " --derivation " + data("broken-trans.drv")).status == 3);
}

TEST_CASE("eval, model-check and oracle") {
    auto e = run("eval " + theory_arg() + " --term '(s0 (d x))' --frame " + data("worked.frame"));
    CHECK(e.out == "star:0\n");
    auto e2 = run("eval " + theory_arg() + " --term '(d 0)' --frame " + data("worked.frame"));
    CHECK(e2.out == "eps:00\n");

    auto m = run("model-check " + theory_arg() + " --derivation " + data("worked.drv") + " --frame " +
                 data("worked.frame") + " --kappa 4");
    CHECK(m.status == 0);
    CHECK(m.out.find("status: model") != std::string::npos);
    CHECK(m.out.find("evaluations: 31") != std::string::npos);
    auto bad = run("model-check " + theory_arg() + " --derivation " + data("worked.drv") + " --frame " +
                   data("tampered.frame") + " --kappa 4");
    CHECK(bad.out.find("status: counterexample") != std::string::npos);
    CHECK(bad.out.find("axiom: d.eps") != std::string::npos);

    auto o = run("oracle " + theory_arg() + " --term '(d 0)' --fuel 10");
    CHECK(o.status == 0);
    CHECK(o.out.find("rewrite: eps:00") != std::string::npos);
    auto stuck = run("oracle " + theory_arg() + " --term '(d 0)' --fuel 1");
    CHECK(stuck.out.find("rewrite: none") != std::string::npos);
}

TEST_CASE("vnf output parses back to a VNF derivation") {
    auto ax = parse_theory(slurp(data("ax-double.thy")));
    std::string path = "vnf-out.drv";
    std::ofstream(path) << "(axiom d.zero ((x eps)))\n";
    auto r = run("vnf " + theory_arg() + " --derivation " + path);
    CHECK(r.status == 0);
    auto v = parse_derivation(r.out, ax);
    CHECK(is_vnf(v));
    CHECK(v.conclusion() == testing::E("(d 0)", "(s0 (s0 (d eps)))"));
}

TEST_CASE("fuzz is deterministic and honours the seed override") {
    auto a = run("fuzz --seed 1 --count 10 --out fuzz-a");
    auto b = run("fuzz --seed 1 --count 10 --out fuzz-b");
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("checked: 10/10") != std::string::npos);
    CHECK(a.out.find("certified: 10/10") != std::string::npos);
    for (int i = 0; i < 10; ++i) {
        std::string name = "/deriv-000" + std::to_string(i) + ".drv";
        CHECK(slurp("fuzz-a" + name) == slurp("fuzz-b" + name));
    }
    auto env = run("fuzz --seed 99 --count 10", "PETS_SEED=1");
    CHECK(env.out == a.out);
    auto other = run("fuzz --seed 2 --count 10");
    CHECK(other.out.find("seed: 2") != std::string::npos);

    auto given = run("fuzz --seed 5 --count 20 --jobs 3 " + theory_arg());
    CHECK(given.status == 0);
    CHECK(given.out.find("certified: 20/20") != std::string::npos);
}
