// qcat: classification and verification front end.

#include "qcat/pipelines.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

using namespace qcat;
using qcat::io::json;

namespace {

void print_text(const json& j, const std::string& prefix, std::ostream& out) {
    for (const auto& [key, value] : j.items()) {
        if (prefix.empty() && key == "summary") continue;
        std::string name = prefix.empty() ? key : prefix + "." + key;
        if (value.is_object())
            print_text(value, name, out);
        else
            out << name << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
    }
}

void emit(const json& j, const std::string& format) {
    if (format == "json") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    if (j.contains("summary")) std::cout << j["summary"].get<std::string>() << "\n";
    print_text(j, "", std::cout);
}

int usage_error(const std::string& what) {
    std::cerr << "qcat: " << what << "\n";
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Autoequivalence classification and verification for quantized enveloping algebras"};
    app.require_subcommand(1);
    std::string format = "json";
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));

    std::string default_q = "2";
    if (const char* env = std::getenv("QCAT_DEFAULT_Q")) default_q = env;

    std::string type_name;
    auto* classify = app.add_subcommand("classify", "Classification report for a simple type");
    classify->fallthrough();
    classify->add_option("type", type_name, "Dynkin type, e.g. D4")->required();

    auto* fundamental = app.add_subcommand("fundamental-group", "P/Q and the projection of P");
    fundamental->fallthrough();
    fundamental->add_option("type", type_name, "Dynkin type")->required();

    std::vector<std::int64_t> orders;
    auto* h2 = app.add_subcommand("h2", "H^2(A; T) for A = Z/n_1 x ... x Z/n_k");
    h2->fallthrough();
    h2->add_option("factors", orders, "Cyclic orders")->required();

    auto* verify = app.add_subcommand("verify", "Run a verification pipeline");
    verify->fallthrough();
    verify->require_subcommand(1);
    std::string q_text;
    int bound = 2;
    std::string mode = "full";
    std::size_t class_index = 1;

    auto* tau = verify->add_subcommand("tau-identity", "Identity (1) for T and tau over all admissible triples");
    tau->fallthrough();
    tau->add_option("type", type_name, "Dynkin type (A1, A2, B2, C2)")->required();
    tau->add_option("--q", q_text, "Deformation parameter p/q");
    tau->add_option("--bound", bound, "Largest weight coordinate");
    tau->add_option("--mode", mode, "Compare every column or only the cyclic vector")->check(CLI::IsMember({"full", "cyclic"}));

    auto* ec = verify->add_subcommand("ec", "E_c round trip for an H^2 class");
    ec->fallthrough();
    ec->add_option("type", type_name, "Dynkin type")->required();
    ec->add_option("--class", class_index, "Class index in the enumeration of H^2");
    ec->add_option("--bound", bound, "Truncation bound");
    ec->add_option("--q", q_text, "Deformation parameter for explicit modules");
    std::vector<std::string> perturb_text;
    ec->add_option("--perturb", perturb_text, "Overwrite a block before checking, e.g. 1|1|0=2");

    auto* prop2 = verify->add_subcommand("prop2", "Uniqueness of normalized cocycles on A1");
    prop2->fallthrough();
    prop2->add_option("--bound", bound, "Truncation bound");
    prop2->add_option("--q", q_text, "Deformation parameter");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        auto q = uqg::QParam::parse(q_text.empty() ? default_q : q_text);
        auto parse_type = [&] { return lattice::DynkinType::parse(type_name); };
        pipelines::Outcome out;
        if (*classify)
            out.doc = pipelines::classify(parse_type());
        else if (*fundamental)
            out.doc = pipelines::fundamental_group(parse_type());
        else if (*h2)
            out.doc = pipelines::h2(orders);
        else if (*tau)
            out = pipelines::verify_tau(parse_type(), q, bound, mode == "full" ? uqg::IdentityMode::full : uqg::IdentityMode::cyclic);
        else if (*ec)
        {
            std::vector<pipelines::Perturbation> perturb;
            for (const auto& p : perturb_text) perturb.push_back(pipelines::parse_perturbation(p));
            out = pipelines::verify_ec(parse_type(), class_index, bound, q, perturb);
        }
        else if (*prop2)
            out = pipelines::verify_prop2(bound, q);
        emit(out.doc, format);
        if (!out.ok) {
            std::cerr << "violated: " << out.doc["violation"].get<std::string>() << "\n";
            return 1;
        }
        return 0;
    } catch (const std::invalid_argument& e) {
        return usage_error(e.what());
    } catch (const std::domain_error& e) {
        return usage_error(e.what());
    }
}
