// Command-line front end: hypothesis checking, certificate construction and
// verification, echelon reduction, the field-case rank condition, and
// deterministic instance generation.
//
// Exit codes: 0 ok, 1 usage, 2 parse, 3 hypothesis-fails,
//             4 internal-verification-failure.

#include "tvc/engine.hpp"
#include "tvc/io.hpp"
#include "tvc/oracle.hpp"
#include "tvc/rado.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <iostream>
#include <sstream>

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kParse = 2;
constexpr int kHypothesisFails = 3;
constexpr int kVerifyFailure = 4;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw tvc::ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

tvc::Instance load_instance(const std::string& path) {
    return tvc::instance_from_json(tvc::parse_json(read_file(path)));
}

void print_matrix(const std::string& label, const tvc::IndexedMatrix& m) {
    std::cout << label << " =\n";
    for (int r : m.rows()) {
        std::cout << "  [";
        bool first = true;
        for (int c : m.cols()) {
            if (!first) std::cout << " ";
            first = false;
            std::cout << m.at(r, c).str();
        }
        std::cout << "]\n";
    }
}

tvc::Ring parse_ring_flag(const std::string& s) {
    if (s == "Z") return tvc::Ring::integers();
    if (s == "Q") return tvc::Ring::rationals();
    if (s.rfind("Zmod", 0) == 0) return tvc::Ring::integers_mod(tvc::Int(s.substr(4)));
    if (s.rfind("GF", 0) == 0) return tvc::Ring::prime_field(tvc::Int(s.substr(2)));
    throw tvc::ParseError("unknown ring \"" + s + "\" (expected Z, Q, Zmod<n> or GF<p>)");
}

int cmd_check(const std::string& instance_path) {
    tvc::Instance inst = load_instance(instance_path);
    auto witness = tvc::find_invertible_transversal(inst.matrix, inst.partition);
    if (!witness) {
        std::cout << "hypothesis: HOLDS\n";
        return kOk;
    }
    auto sub = tvc::submatrix(inst.matrix, inst.matrix.rows(), *witness);
    std::cout << "hypothesis: FAILS, witness columns " << witness->str() << "\n";
    std::cout << "witness determinant: " << tvc::determinant(sub).str() << "\n";
    return kHypothesisFails;
}

int cmd_certify(const std::string& instance_path, const std::string& out_path) {
    tvc::Instance inst = load_instance(instance_path);
    std::optional<tvc::TheoremCertificate> cert;
    try {
        cert = tvc::certify(inst.matrix, inst.partition);
    } catch (const tvc::HypothesisError& e) {
        std::cout << "hypothesis: FAILS, witness columns " << e.witness_columns.str() << "\n";
        auto sub = tvc::submatrix(inst.matrix, inst.matrix.rows(), e.witness_columns);
        std::cout << "witness determinant: " << tvc::determinant(sub).str() << "\n";
        return kHypothesisFails;
    }
    auto check = tvc::verify_certificate(inst.matrix, inst.partition, *cert);
    if (!check.ok) {
        std::cerr << "internal verification failed: " << check.diagnostic << "\n";
        return kVerifyFailure;
    }
    std::string text = tvc::serialize(tvc::certificate_to_json(*cert));
    if (out_path.empty()) {
        std::cout << text;
    } else {
        write_file(out_path, text);
        std::cout << "certificate: VALID (branch " << tvc::branch_name(cert->branch)
                  << ", m = " << cert->m << ")\n";
    }
    return kOk;
}

int cmd_verify(const std::string& instance_path, const std::string& cert_path) {
    tvc::Instance inst = load_instance(instance_path);
    tvc::TheoremCertificate cert = tvc::certificate_from_json(
        tvc::parse_json(read_file(cert_path)), inst.matrix.ring(), inst.matrix.rows());
    auto check = tvc::verify_certificate(inst.matrix, inst.partition, cert);
    if (!check.ok) {
        std::cout << "certificate: INVALID: " << check.diagnostic << "\n";
        return kVerifyFailure;
    }
    std::cout << "certificate: VALID\n";
    return kOk;
}

int cmd_echelon(const std::string& instance_path) {
    tvc::Instance inst = load_instance(instance_path);
    tvc::EchelonResult er = tvc::reduce(inst.matrix);
    print_matrix("Q", er.Q);
    print_matrix("QM", er.reduced);
    std::cout << "t = " << er.t << "\n";
    return kOk;
}

int cmd_rado(const std::string& instance_path, int k) {
    tvc::Instance inst = load_instance(instance_path);
    tvc::RadoReport report = tvc::rado_condition(inst.matrix, inst.partition, k);
    std::cout << "k = " << report.k << "\n";
    std::cout << "condition: " << (report.holds ? "HOLDS" : "FAILS") << "\n";
    if (report.holds) {
        std::cout << "witness transversal: " << report.witness_transversal->str() << "\n";
    } else {
        std::cout << "violating family blocks: {";
        bool first = true;
        for (int i : *report.violating_family) {
            if (!first) std::cout << ", ";
            first = false;
            std::cout << i;
        }
        std::cout << "}\n";
    }
    return kOk;
}

int cmd_gen(const tvc::InstanceSpec& spec, bool require_hypothesis, const std::string& out_path) {
    auto [m, part] = tvc::generate(spec, require_hypothesis);
    tvc::Instance inst{std::move(m), std::move(part),
                       tvc::GeneratorStamp{tvc::kRngAlgorithm, spec.seed}};
    std::string text = tvc::serialize(tvc::instance_to_json(inst));
    if (out_path.empty())
        std::cout << text;
    else
        write_file(out_path, text);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact transversal-submatrix certificates for column-partitioned matrices"};
    app.require_subcommand(1);

    std::string instance_path, cert_path, out_path;
    int k = 0;

    auto* check = app.add_subcommand("check", "test the no-invertible-transversal hypothesis");
    check->add_option("instance", instance_path, "instance file")->required();

    auto* certify = app.add_subcommand("certify", "construct and verify a certificate");
    certify->add_option("instance", instance_path, "instance file")->required();
    certify->add_option("-o,--output", out_path, "write the certificate here (default: stdout)");

    auto* verify = app.add_subcommand("verify", "independently re-check a certificate");
    verify->add_option("instance", instance_path, "instance file")->required();
    verify->add_option("certificate", cert_path, "certificate file")->required();

    auto* echelon = app.add_subcommand("echelon", "print Q, QM and t for the instance matrix");
    echelon->add_option("instance", instance_path, "instance file")->required();

    auto* rado = app.add_subcommand("rado", "field-case rank condition for size-k transversals");
    rado->add_option("instance", instance_path, "instance file")->required();
    rado->add_option("-k", k, "target transversal size")->required();

    auto* gen = app.add_subcommand("gen", "deterministically generate an instance");
    std::string ring_flag = "Z";
    tvc::InstanceSpec spec;
    bool require_hypothesis = false;
    gen->add_option("--ring", ring_flag, "Z, Q, Zmod<n> or GF<p>")->required();
    gen->add_option("-p", spec.p, "row count")->required();
    gen->add_option("-q", spec.q, "column count")->required();
    gen->add_option("-n", spec.n, "block count")->required();
    gen->add_option("--seed", spec.seed, "64-bit seed")->required();
    gen->add_option("--bound", spec.entry_bound, "entry bound for Z and Q")->capture_default_str();
    gen->add_flag("--require-hypothesis", require_hypothesis,
                  "rejection-sample until the hypothesis holds");
    gen->add_option("-o,--output", out_path, "write the instance here (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (check->parsed()) return cmd_check(instance_path);
        if (certify->parsed()) return cmd_certify(instance_path, out_path);
        if (verify->parsed()) return cmd_verify(instance_path, cert_path);
        if (echelon->parsed()) return cmd_echelon(instance_path);
        if (rado->parsed()) return cmd_rado(instance_path, k);
        if (gen->parsed()) {
            spec.ring = parse_ring_flag(ring_flag);
            return cmd_gen(spec, require_hypothesis, out_path);
        }
    } catch (const tvc::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const tvc::CertificateError& e) {
        std::cerr << "internal verification failed: " << e.what() << "\n";
        return kVerifyFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
