#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <string>

#include "supergerbe/examples.hpp"
#include "supergerbe/expression.hpp"
#include "supergerbe/selftest.hpp"

using namespace supergerbe;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

// Collected result of one command.
struct Outcome {
  std::string command;
  Report report;
  json values = json::object();

  void print_checks() const {
    for (const auto& c : report.checks) {
      std::string line = std::string(c.ok ? "ok    " : "FAIL  ") + c.identity;
      if (!c.where.empty()) line += "  @ " + c.where;
      if (!c.ok && !c.detail.empty()) line += "  (" + c.detail + ")";
      std::cout << line << "\n";
    }
  }
};

json report_json(const Outcome& o) {
  json checks = json::array(), failures = json::array();
  for (const auto& c : o.report.checks) {
    json e = {{"identity", c.identity}, {"where", c.where}, {"ok", c.ok}, {"detail", c.detail}};
    checks.push_back(e);
    if (!c.ok) failures.push_back(e);
  }
  return {{"format", 1},           {"command", o.command}, {"subject", o.report.subject},
          {"ok", o.report.ok()},   {"checks", checks},     {"failures", failures},
          {"values", o.values}};
}

// `builtin:<name>` loads a corpus entry; anything else is a path.
Manifest load(const std::string& source, const Exec& exec) {
  const std::string prefix = "builtin:";
  if (source.rfind(prefix, 0) == 0) return builtin_example(source.substr(prefix.size()), exec);
  return parse_manifest(read_file(source));
}

// Named form, or an expression over the manifest's ring.
SuperForm form_arg(const Manifest& m, const std::string& text) {
  for (const auto& [n, f] : m.forms)
    if (n == text) return f;
  return parse_form(text, m.cover->ring());
}

bool is_math_failure(ErrorKind k) {
  switch (k) {
    case ErrorKind::ParseError:
    case ErrorKind::InvalidArgument:
    case ErrorKind::UnknownGenerator:
    case ErrorKind::CoverMismatch:
      return false;
    default:
      return true;
  }
}

std::string gerbe_text(const GerbeCocycle& g) {
  std::string s;
  for (const CechFamily* f : {&g.h, &g.A, &g.B})
    for (const auto& p : f->parts) s += p.str() + "\n";
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"supergerbe: gerbes on supermanifolds over exact Gaussian rationals"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string report_path;
  int parallel = 0;
  app.add_option("--report", report_path, "write a JSON report");
  app.add_option("--parallel", parallel, "worker bound (default SUPERGERBE_PARALLEL or 1)")->check(CLI::PositiveNumber);

  std::string manifest, name, form, cert_path, out_path, gerbe_name = "constructed";

  auto gerbe_cmd = [&](const char* cmd, const char* help) {
    auto* sub = app.add_subcommand(cmd, help);
    sub->add_option("manifest", manifest, "manifest path or builtin:<name>")->required();
    sub->add_option("gerbe", name, "gerbe name")->required();
    return sub;
  };
  auto* check = gerbe_cmd("check", "check the cocycle identities");
  auto* dd = gerbe_cmd("dd", "integer class and fundamental pairing");
  auto* curv = gerbe_cmd("curvature", "global curvature 3-form");
  auto* rep = gerbe_cmd("rep-identity", "total differential identity");
  auto* triv = gerbe_cmd("trivialize", "trivialization certificate");
  triv->add_option("-o,--output", out_path, "certificate path");
  auto* decomp = gerbe_cmd("decompose", "body/soul decomposition");
  decomp->add_option("-o,--output", out_path, "decomposition path")->required();
  auto* verify = gerbe_cmd("verify", "re-check a certificate or decomposition");
  verify->add_option("certificate", cert_path, "certificate or decomposition path")->required();

  auto* construct = app.add_subcommand("construct", "gerbe from an integral closed 3-form");
  construct->add_option("manifest", manifest)->required();
  construct->add_option("form", form, "form name or expression")->required();
  construct->add_option("-o,--output", out_path, "manifest to write")->required();
  construct->add_option("--name", gerbe_name, "name of the new gerbe");

  auto* integral = app.add_subcommand("integral", "integrality of a closed 2- or 3-form");
  integral->add_option("manifest", manifest)->required();
  integral->add_option("form", form, "form name or expression")->required();

  auto* examples = app.add_subcommand("examples", "built-in corpus");
  examples->require_subcommand(1);
  auto* ex_list = examples->add_subcommand("list", "list entries");
  auto* ex_emit = examples->add_subcommand("emit", "print or write one manifest");
  ex_emit->add_option("name", name)->required();
  ex_emit->add_option("-o,--output", out_path);

  auto* selftest = app.add_subcommand("selftest", "acceptance criteria and corpus checks");
  bool skip_corpus = false;
  selftest->add_flag("--no-corpus", skip_corpus, "criteria only");

  CLI11_PARSE(app, argc, argv);

  Exec exec = Exec::from_env();
  if (parallel > 0) exec.workers = static_cast<unsigned>(parallel);

  Outcome out;
  int code = kOk;
  try {
    if (check->parsed()) {
      out.command = "check";
      Manifest m = load(manifest, exec);
      out.report = validate_cover(*m.cover);
      out.report.append(check_gerbe_cocycle(m.gerbe(name), exec));
      out.report.subject = name;
      out.print_checks();
    } else if (dd->parsed()) {
      out.command = "dd";
      Manifest m = load(manifest, exec);
      IntegerClass k = dd_class(m.gerbe(name), exec);
      out.report.subject = name;
      out.report.add("dd is an integer cocycle", "", k.is_cocycle());
      std::size_t nonzero = 0;
      json vals = json::array();
      for (const auto& v : k.values) {
        vals.push_back(v.get_str());
        nonzero += v != 0;
      }
      out.values["values"] = vals;
      out.values["zero_class"] = k.is_zero_class();
      std::cout << "dd cochain: " << k.values.size() << " tuples, " << nonzero << " nonzero\n";
      std::cout << "zero class: " << (k.is_zero_class() ? "yes" : "no") << "\n";
      if (auto p = k.fundamental_pairing()) {
        std::cout << "pairing: " << p->get_str() << "\n";
        out.values["pairing"] = p->get_str();
      }
      out.print_checks();
    } else if (curv->parsed()) {
      out.command = "curvature";
      Manifest m = load(manifest, exec);
      SuperForm H = curvature(m.gerbe(name), exec);
      out.report.subject = name;
      out.report.add("curvature descends", "", true);
      out.report.add("dH = 0", "", d(H).is_zero());
      out.values["H"] = H.str();
      std::cout << "H = " << H.str() << "\n";
      out.print_checks();
    } else if (rep->parsed()) {
      out.command = "rep-identity";
      Manifest m = load(manifest, exec);
      out.report = check_rep_identity(m.gerbe(name), exec);
      out.print_checks();
    } else if (triv->parsed()) {
      out.command = "trivialize";
      Manifest m = load(manifest, exec);
      const GerbeCocycle& g = m.gerbe(name);
      TrivializationCertificate t = trivialize(g, exec);
      out.report = verify_certificate(g, t, exec);
      out.report.subject = name;
      if (!out_path.empty()) write_file(out_path, emit_certificate(m, name, t));
      else std::cout << emit_certificate(m, name, t);
      out.print_checks();
    } else if (construct->parsed()) {
      out.command = "construct";
      Manifest m = load(manifest, exec);
      SuperForm H = form_arg(m, form);
      GerbeCocycle g = construct_from_integral_form(m.cover, H, exec);
      out.report = check_gerbe_cocycle(g, exec);
      out.report.subject = gerbe_name;
      out.report.add("curvature equals input", "", curvature(g, exec) == H);
      m.set_gerbe(gerbe_name, std::move(g));
      write_file(out_path, emit_manifest(m));
      std::cout << "wrote gerbe '" << gerbe_name << "' to " << out_path << "\n";
      out.print_checks();
    } else if (integral->parsed()) {
      out.command = "integral";
      Manifest m = load(manifest, exec);
      IntegralityResult r = integral_check(m.cover, form_arg(m, form), exec);
      out.report.subject = form;
      if (r.integral) {
        std::cout << "integral: yes\n";
        if (auto p = r.integer_class.fundamental_pairing()) {
          std::cout << "pairing: " << p->get_str() << "\n";
          out.values["pairing"] = p->get_str();
        }
        out.report.add("integral periods", "", true);
      } else {
        std::cout << "integral: no\nwitness: " << r.witness_value << "\n";
        out.values["witness"] = r.witness_value;
        json cyc = json::array();
        for (const auto& v : r.witness) cyc.push_back(v.get_str());
        out.values["witness_cycle"] = cyc;
        out.report.add("integral periods", "", false, "witness " + r.witness_value);
      }
      out.print_checks();
    } else if (decomp->parsed()) {
      out.command = "decompose";
      Manifest m = load(manifest, exec);
      const GerbeCocycle& g = m.gerbe(name);
      DecompositionResult r = decompose(g, exec);
      out.report = verify_decomposition(g, r, exec);
      out.report.subject = name;
      out.values["beta"] = r.beta.str();
      std::cout << "beta = " << r.beta.str() << "\n";
      write_file(out_path, emit_decomposition(m, name, r));
      std::cout << "wrote decomposition to " << out_path << "\n";
      out.print_checks();
    } else if (verify->parsed()) {
      out.command = "verify";
      Manifest m = load(manifest, exec);
      const GerbeCocycle& g = m.gerbe(name);
      std::string text = read_file(cert_path);
      std::string kind = document_kind(text);
      std::string target;
      if (kind == "certificate") {
        TrivializationCertificate t = parse_certificate(text, m, &target);
        out.report = verify_certificate(g, t, exec);
      } else if (kind == "decomposition") {
        DecompositionResult r = parse_decomposition(text, m, &target);
        out.report = verify_decomposition(g, r, exec);
        out.report.add("body is i* of the gerbe", "", gerbe_text(r.body) == gerbe_text(gerbe_body(g)));
      } else {
        raise(ErrorKind::InvalidArgument, "cannot verify a '" + kind + "' document");
      }
      out.report.add("document names this gerbe", target, target == name);
      out.report.subject = name;
      out.print_checks();
    } else if (ex_list->parsed()) {
      out.command = "examples list";
      for (const auto& e : builtin_examples()) std::cout << e.name << "  " << e.description << "\n";
    } else if (ex_emit->parsed()) {
      out.command = "examples emit";
      std::string text = emit_manifest(builtin_example(name, exec));
      if (out_path.empty()) std::cout << text;
      else write_file(out_path, text);
    } else if (selftest->parsed()) {
      out.command = "selftest";
      out.report.subject = "selftest";
      for (int id = 1; id <= acceptance_count(); ++id) {
        CriterionResult r = run_acceptance(id, exec);
        out.report.add("criterion " + std::to_string(id) + ": " + r.title, "", r.ok, r.detail);
        std::cout << (r.ok ? "ok    " : "FAIL  ") << "criterion " << id << ": " << r.title << "  [" << r.detail
                  << "]\n"
                  << std::flush;
      }
      if (!skip_corpus) {
        Report c = corpus_selftest(exec);
        for (const auto& chk : c.checks) {
          out.report.checks.push_back(chk);
          std::cout << (chk.ok ? "ok    " : "FAIL  ") << chk.identity << "  @ " << chk.where
                    << (chk.ok ? "" : "  (" + chk.detail + ")") << "\n";
        }
      }
    }
    if (!out.report.ok()) code = kFailed;
  } catch (const Error& e) {
    bool math = is_math_failure(e.kind());
    out.report.add(std::string("error: ") + to_string(e.kind()), "", false, e.what());
    std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    code = math ? kFailed : kUsage;
  }

  if (code != kOk) {
    std::cout << "failures:\n";
    for (const auto& c : out.report.checks)
      if (!c.ok) std::cout << "  - " << json{{"identity", c.identity}, {"where", c.where}, {"detail", c.detail}}.dump() << "\n";
  }
  if (!report_path.empty()) {
    try {
      write_file(report_path, report_json(out).dump(2) + "\n");
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kUsage;
    }
  }
  return code;
}
