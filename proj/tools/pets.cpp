#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pets/certifier.hpp"
#include "pets/error.hpp"
#include "pets/fuzz.hpp"
#include "pets/oracle.hpp"

using namespace pets;
namespace fs = std::filesystem;

namespace {

enum Status { kOk = 0, kParse = 1, kNiceness = 2, kRejected = 3, kCertification = 4 };

int status_of(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::niceness: return kNiceness;
        case ErrorKind::derivation: return kRejected;
        case ErrorKind::certification: return kCertification;
        default: return kParse;
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::parse, "cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::parse, "cannot write '" + path + "'");
    out << text;
}

NiceAxiomSet load_theory(const std::string& path) {
    try {
        return parse_theory(read_file(path));
    } catch (const Error& e) {
        throw Error(e.kind(), path + ": " + e.what());
    }
}

Derivation load_derivation(const std::string& path, const NiceAxiomSet& ax) {
    try {
        return parse_derivation(read_file(path), ax);
    } catch (const Error& e) {
        throw Error(e.kind(), path + ": " + e.what());
    }
}

Frame load_frame(const std::string& path, const NiceAxiomSet& ax) {
    if (path.empty()) return {};
    return parse_frame(read_file(path), ax.signature());
}

Assignment load_assignment(const std::string& path) {
    if (path.empty()) return {};
    return parse_assignment(read_file(path));
}

// Runs body(i) for i < n on up to `jobs` threads.
void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& body) {
    jobs = std::max<std::size_t>(1, std::min(jobs, n));
    if (jobs == 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) body(i);
        });
    for (auto& t : pool) t.join();
}

std::string ratio(double v) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(4) << v;
    return out.str();
}

struct CheckResult {
    int status = kOk;
    std::string text;
};

CheckResult check_one(const std::string& path, const NiceAxiomSet& ax) {
    CheckResult r;
    std::ostringstream out;
    out << "file: " << path << "\n";
    try {
        Derivation d = load_derivation(path, ax);
        CheckReport report = check_derivation(d, ax);
        if (!report.ok()) {
            r.status = kRejected;
            out << "status: rejected\n";
            for (const auto& diag : report.diagnostics) out << "at " << diag.path << ": " << diag.message << "\n";
        } else {
            out << "status: ok\n";
            out << "end: " << print_equation(d.conclusion()) << "\n";
            out << "length: " << derivation_length(d) << "\n";
            out << "depth: " << derivation_depth(d) << "\n";
            out << "vnf: " << (is_vnf(d) ? "yes" : "no") << "\n";
        }
    } catch (const Error& e) {
        r.status = status_of(e.kind());
        out << "status: error\nerror: " << e.what() << "\n";
    }
    r.text = out.str();
    return r;
}

int cmd_check(const std::string& theory, const std::vector<std::string>& files, const std::string& out_path,
              std::size_t jobs) {
    NiceAxiomSet ax = load_theory(theory);
    std::vector<CheckResult> results(files.size());
    parallel_for(files.size(), jobs, [&](std::size_t i) { results[i] = check_one(files[i], ax); });
    std::string text;
    int status = kOk;
    for (const auto& r : results) {
        text += r.text;
        status = std::max(status, r.status);
    }
    write_output(out_path, text);
    return status;
}

int cmd_vnf(const std::string& theory, const std::string& file, const std::string& out_path, double vnf_c) {
    NiceAxiomSet ax = load_theory(theory);
    Derivation d = load_derivation(file, ax);
    if (auto report = check_derivation(d, ax); !report.ok())
        throw Error(ErrorKind::derivation, "derivation rejected:\n" + report.summary());
    Derivation v = to_vnf(d, ax);
    double lh = static_cast<double>(derivation_length(d));
    double r = static_cast<double>(derivation_length(v)) / (lh * lh);
    std::ostringstream out;
    out << "; end: " << print_equation(v.conclusion()) << "\n";
    out << "; lh(D) = " << derivation_length(d) << ", lh(vnf) = " << derivation_length(v)
        << ", lh(vnf)/lh(D)^2 = " << ratio(r) << " (C = " << vnf_c << ")\n";
    out << print_derivation(v);
    write_output(out_path, out.str());
    if (r > vnf_c) {
        std::cerr << "error: VNF length bound exceeded\n";
        return kCertification;
    }
    return kOk;
}

struct CertifyResult {
    int status = kOk;
    nlohmann::ordered_json json;
    std::string trace;
};

CertifyResult certify_one(const std::string& path, const NiceAxiomSet& ax, const Frame& frame,
                          const Assignment& rho, bool trace) {
    CertifyResult r;
    try {
        Derivation d = load_derivation(path, ax);
        Certificate cert = certify(d, ax, frame, rho);
        r.json = certificate_to_json(cert);
        if (trace)
            r.trace = "; " + path + " forward\n" + print_trace(cert.forward) + "; " + path + " backward\n" +
                      print_trace(cert.backward);
    } catch (const CertificationError& e) {
        r.status = kCertification;
        r.json = {{"error", e.what()}, {"bundle", e.bundle()}};
    } catch (const Error& e) {
        r.status = status_of(e.kind());
        r.json = {{"error", e.what()}};
    }
    return r;
}

int cmd_certify(const std::string& theory, const std::vector<std::string>& files, const std::string& frame_path,
                const std::string& assignment_path, const std::string& out_path, bool trace, std::size_t jobs) {
    NiceAxiomSet ax = load_theory(theory);
    Frame frame = load_frame(frame_path, ax);
    Assignment rho = load_assignment(assignment_path);
    std::vector<CertifyResult> results(files.size());
    parallel_for(files.size(), jobs, [&](std::size_t i) { results[i] = certify_one(files[i], ax, frame, rho, trace); });
    int status = kOk;
    nlohmann::ordered_json doc;
    if (files.size() == 1) {
        doc = results[0].json;
    } else {
        doc = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < files.size(); ++i)
            doc.push_back({{"file", files[i]}, {"status", results[i].status}, {"result", results[i].json}});
    }
    for (const auto& r : results) {
        status = std::max(status, r.status);
        std::cerr << r.trace;
        if (r.status != kOk && r.json.contains("error"))
            std::cerr << "error: " << r.json["error"].get<std::string>() << "\n";
    }
    write_output(out_path, doc.dump(2) + "\n");
    return status;
}

int cmd_eval(const std::string& theory, const std::string& term, const std::string& frame_path,
             const std::string& assignment_path) {
    NiceAxiomSet ax = load_theory(theory);
    Term t = parse_term(term, ax.signature());
    ApproxValue v = eval_term(load_frame(frame_path, ax), load_assignment(assignment_path), t);
    std::cout << print_value(v) << "\n";
    return kOk;
}

int cmd_model_check(const std::string& theory, const std::string& derivation, const std::string& frame_path,
                    std::size_t kappa, std::size_t cap) {
    NiceAxiomSet ax = load_theory(theory);
    Derivation d = load_derivation(derivation, ax);
    Frame frame = load_frame(frame_path, ax);
    ModelCheckScope scope = scope_for(d, ax, kappa, cap);
    ModelCheckReport r = check_kappa_model(frame, scope, ax);
    std::cout << "kappa: " << kappa << "\n";
    std::cout << "axioms:";
    for (const auto& id : scope.axioms) std::cout << " " << id;
    std::cout << "\n";
    std::cout << "evaluations: " << r.evaluations << "\n";
    if (r.ok) {
        std::cout << "status: model\n";
    } else {
        std::cout << "status: counterexample\n";
        std::cout << "reason: " << r.message << "\n";
        if (!r.axiom_id.empty()) {
            std::cout << "axiom: " << r.axiom_id << "\n";
            std::cout << "lhs: " << print_value(r.lhs_value) << "\n";
            std::cout << "rhs: " << print_value(r.rhs_value) << "\n";
            for (const auto& [x, v] : r.witness.table()) std::cout << "assign: " << x << " -> " << print_value(v) << "\n";
        }
    }
    return kOk;
}

int cmd_oracle(const std::string& theory, const std::string& term, std::size_t fuel, const std::string& frame_path) {
    NiceAxiomSet ax = load_theory(theory);
    Term t = parse_term(term, ax.signature());
    if (!free_vars(t).empty()) throw Error(ErrorKind::parse, "oracle needs a ground term");
    OracleReport r = oracle_compare(ax, load_frame(frame_path, ax), {}, t, Fuel{fuel});
    std::cout << "rewrite: " << (r.truth ? print_value(*r.truth) : "none") << "\n";
    std::cout << "approx: " << print_value(r.approx) << "\n";
    std::cout << "status: " << (r.ok ? "agree" : "overshoot") << "\n";
    return r.ok ? kOk : kCertification;
}

struct FuzzOptions {
    std::uint64_t seed = 1;
    std::size_t count = 10;
    std::size_t theories = 1;
    std::string theory;
    std::string out_dir;
    double vnf_c = 8;
    std::size_t jobs = 1;
};

struct FuzzRow {
    bool checked = false;
    bool certified = false;
    std::string error;
    std::size_t lh = 0, depth = 0, skipped = 0;
    double seqlh_ratio = 0, extent_ratio = 0, gauge_ratio = 0, vnf_ratio = 0;
};

int cmd_fuzz(FuzzOptions opt) {
    if (const char* env = std::getenv("PETS_SEED")) opt.seed = std::stoull(env);
    fuzz::Corpus corpus;
    if (opt.theory.empty()) {
        corpus = fuzz::generate_corpus(opt.seed, opt.theories, opt.count);
    } else {
        fuzz::Rng rng(opt.seed);
        corpus.theories.push_back(load_theory(opt.theory));
        for (std::size_t i = 0; i < opt.count; ++i)
            corpus.entries.push_back({0, fuzz::random_derivation(rng, corpus.theories[0])});
    }

    std::vector<FuzzRow> rows(corpus.entries.size());
    parallel_for(rows.size(), opt.jobs, [&](std::size_t i) {
        const auto& e = corpus.entries[i];
        const auto& ax = corpus.theories[e.theory];
        FuzzRow& row = rows[i];
        row.lh = derivation_length(e.derivation);
        row.depth = derivation_depth(e.derivation);
        row.checked = check_derivation(e.derivation, ax).ok();
        if (!row.checked) return;
        try {
            Certificate c = certify(e.derivation, ax);
            row.certified = true;
            double lh = static_cast<double>(c.normalized_length);
            for (const auto* s : {&c.sigma1, &c.sigma2}) {
                auto m = seq_measures(*s);
                row.seqlh_ratio = std::max(row.seqlh_ratio, m.seqlh / lh);
                row.extent_ratio = std::max(row.extent_ratio, m.extent / lh);
                row.gauge_ratio = std::max(row.gauge_ratio, m.gauge / static_cast<double>(c.budget));
            }
            row.vnf_ratio = lh / (static_cast<double>(row.lh) * static_cast<double>(row.lh));
            row.skipped = c.skipped_forward + c.skipped_backward;
        } catch (const Error& ex) {
            row.error = ex.what();
        }
    });

    if (!opt.out_dir.empty()) {
        fs::create_directories(opt.out_dir);
        for (std::size_t t = 0; t < corpus.theories.size(); ++t) {
            std::ostringstream name;
            name << "theory-" << std::setw(2) << std::setfill('0') << t << ".thy";
            write_output((fs::path(opt.out_dir) / name.str()).string(), print_theory(corpus.theories[t]));
        }
        for (std::size_t i = 0; i < corpus.entries.size(); ++i) {
            std::ostringstream name, body;
            name << "deriv-" << std::setw(4) << std::setfill('0') << i << ".drv";
            body << "; theory theory-" << std::setw(2) << std::setfill('0') << corpus.entries[i].theory << ".thy\n"
                 << print_derivation(corpus.entries[i].derivation);
            write_output((fs::path(opt.out_dir) / name.str()).string(), body.str());
        }
    }

    std::size_t checked = 0, certified = 0, max_depth = 0, max_lh = 0, skipped = 0;
    double seqlh = 0, extent = 0, gauge = 0, vnf = 0;
    for (const auto& r : rows) {
        checked += r.checked;
        certified += r.certified;
        max_depth = std::max(max_depth, r.depth);
        max_lh = std::max(max_lh, r.lh);
        skipped += r.skipped;
        seqlh = std::max(seqlh, r.seqlh_ratio);
        extent = std::max(extent, r.extent_ratio);
        gauge = std::max(gauge, r.gauge_ratio);
        vnf = std::max(vnf, r.vnf_ratio);
    }
    std::cout << "seed: " << opt.seed << "\n";
    std::cout << "theories: " << corpus.theories.size() << "\n";
    std::cout << "derivations: " << rows.size() << "\n";
    std::cout << "checked: " << checked << "/" << rows.size() << "\n";
    std::cout << "certified: " << certified << "/" << rows.size() << "\n";
    std::cout << "max depth: " << max_depth << "\n";
    std::cout << "max lh(D): " << max_lh << "\n";
    std::cout << "max seqlh(sigma)/lh(D): " << ratio(seqlh) << "\n";
    std::cout << "max E(sigma)/lh(D): " << ratio(extent) << "\n";
    std::cout << "max G(sigma)/U: " << ratio(gauge) << "\n";
    std::cout << "max lh(vnf)/lh(D)^2: " << ratio(vnf) << " (C = " << opt.vnf_c << ")\n";
    std::cout << "skipped psi steps: " << skipped << "\n";
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (!rows[i].error.empty()) std::cout << "failure " << i << ": " << rows[i].error << "\n";
    if (checked != rows.size()) return kRejected;
    if (certified != rows.size() || vnf > opt.vnf_c) return kCertification;
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Derivation checker and certifier for pure equational theories with substitution"};
    app.require_subcommand(1);

    std::string theory, derivation, frame, assignment, out, term;
    std::vector<std::string> derivations;
    std::size_t kappa = 1, fuel = kDefaultFuel, cap = kDefaultEnumerationCap, jobs = 1;
    bool trace = false;
    double vnf_c = 8;
    FuzzOptions fuzz_opt;

    auto* check = app.add_subcommand("check", "check a theory and derivations");
    check->add_option("--theory", theory, "theory file")->required();
    check->add_option("--derivation", derivations, "derivation file(s)")->required();
    check->add_option("--out", out, "report file");
    check->add_option("--jobs", jobs, "parallel workers");

    auto* vnf = app.add_subcommand("vnf", "normalize a derivation");
    vnf->add_option("--theory", theory, "theory file")->required();
    vnf->add_option("--derivation", derivation, "derivation file")->required();
    vnf->add_option("--out", out, "output file");
    vnf->add_option("--vnf-c", vnf_c, "constant C in lh(vnf) <= C lh(D)^2");

    auto* cert = app.add_subcommand("certify", "certify derivations");
    cert->add_option("--theory", theory, "theory file")->required();
    cert->add_option("--derivation", derivations, "derivation file(s)")->required();
    cert->add_option("--frame", frame, "initial frame");
    cert->add_option("--assignment", assignment, "initial assignment");
    cert->add_option("--out", out, "certificate file");
    cert->add_flag("--trace", trace, "print instruction traces to stderr");
    cert->add_option("--jobs", jobs, "parallel workers");

    auto* eval = app.add_subcommand("eval", "evaluate a term in a frame");
    eval->add_option("--theory", theory, "theory file")->required();
    eval->add_option("--term", term, "term")->required();
    eval->add_option("--frame", frame, "frame file");
    eval->add_option("--assignment", assignment, "assignment file");

    auto* model = app.add_subcommand("model-check", "exhaustive kappa-model check");
    model->add_option("--theory", theory, "theory file")->required();
    model->add_option("--derivation", derivation, "derivation file")->required();
    model->add_option("--frame", frame, "frame file");
    model->add_option("--kappa", kappa, "gauge bound")->required()->check(CLI::PositiveNumber);
    model->add_option("--cap", cap, "enumeration cap");

    auto* oracle = app.add_subcommand("oracle", "rewrite a ground term");
    oracle->add_option("--theory", theory, "theory file")->required();
    oracle->add_option("--term", term, "ground term")->required();
    oracle->add_option("--fuel", fuel, "rewrite steps")->check(CLI::PositiveNumber);
    oracle->add_option("--frame", frame, "frame to compare against");

    auto* fz = app.add_subcommand("fuzz", "generate and certify a random corpus");
    fz->add_option("--seed", fuzz_opt.seed, "seed (PETS_SEED overrides)");
    fz->add_option("--count", fuzz_opt.count, "number of derivations");
    fz->add_option("--theories", fuzz_opt.theories, "number of random theories")->check(CLI::PositiveNumber);
    fz->add_option("--theory", fuzz_opt.theory, "use this theory instead of random ones");
    fz->add_option("--out", fuzz_opt.out_dir, "corpus directory");
    fz->add_option("--vnf-c", fuzz_opt.vnf_c, "constant C in lh(vnf) <= C lh(D)^2");
    fz->add_option("--jobs", fuzz_opt.jobs, "parallel workers");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kParse;
    }

    try {
        if (*check) return cmd_check(theory, derivations, out, jobs);
        if (*vnf) return cmd_vnf(theory, derivation, out, vnf_c);
        if (*cert) return cmd_certify(theory, derivations, frame, assignment, out, trace, jobs);
        if (*eval) return cmd_eval(theory, term, frame, assignment);
        if (*model) return cmd_model_check(theory, derivation, frame, kappa, cap);
        if (*oracle) return cmd_oracle(theory, term, fuel, frame);
        if (*fz) return cmd_fuzz(fuzz_opt);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return status_of(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParse;
    }
    return kOk;
}
