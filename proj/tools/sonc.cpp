#include "sonc/errors.hpp"
#include "sonc/report.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

void add_common(CLI::App* cmd, sonc::PipelineOptions& opts, bool& json_out) {
  cmd->add_option("--n", opts.n, "variable count for inline polynomial input");
  cmd->add_flag("--json", json_out, "machine-readable JSON on stdout");
  cmd->add_option("--seed", opts.seed, "oracle sampling seed");
  cmd->add_option("--scale-exponents", opts.scale_exponents, "multiply all exponents by k");
  cmd->add_flag("--validate", opts.validate, "oracle-validate the bound");
  cmd->add_option("--samples", opts.oracle_samples, "oracle sample count");
  cmd->add_option("--target", opts.target, "target exponent, e.g. '0,0'");
  cmd->add_option("--triangulation", opts.triangulation_file, "triangulation JSON file");
  cmd->add_option("--weights", opts.weights, "equal | optimize:<budget> | file.json");
  cmd->add_option("--strategy", opts.strategy, "gp | snp | auto");
  cmd->add_flag("--cover", opts.cover_fallback, "route non-simplex supports through the cover");
  cmd->add_option("--cert-out", opts.cert_out, "write the certificate to this file");
}

int emit(const sonc::RunReport& rep, bool json_out) {
  if (json_out)
    std::cout << rep.payload.dump(2) << std::endl;
  else
    std::cout << rep.human << std::endl;
  return rep.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certified polynomial lower bounds via sums of nonnegative circuits"};
  app.require_subcommand(1);

  sonc::PipelineOptions opts;
  bool json_out = false;
  std::string input, cert_file, problem_file;

  CLI::App* analyze = app.add_subcommand("analyze", "support analysis and ST check");
  analyze->add_option("input", input, "polynomial text or problem JSON file")->required();
  add_common(analyze, opts, json_out);

  CLI::App* minimize = app.add_subcommand("minimize", "unconstrained lower bound");
  minimize->add_option("input", input, "polynomial text or problem JSON file")->required();
  add_common(minimize, opts, json_out);

  CLI::App* minc = app.add_subcommand("minimize-constrained", "lower bound over {g_i >= 0}");
  minc->add_option("input", input, "problem JSON file")->required();
  add_common(minc, opts, json_out);

  CLI::App* verify = app.add_subcommand("verify", "recheck a stored certificate");
  verify->add_option("certificate", cert_file, "certificate JSON file")->required();
  verify->add_option("problem", problem_file, "problem JSON file")->required();
  add_common(verify, opts, json_out);

  CLI11_PARSE(app, argc, argv);

  try {
    sonc::RunReport rep;
    if (analyze->parsed()) rep = sonc::cmd_analyze(input, opts);
    else if (minimize->parsed()) rep = sonc::cmd_minimize(input, opts);
    else if (minc->parsed()) rep = sonc::cmd_minimize_constrained(input, opts);
    else rep = sonc::cmd_verify(cert_file, problem_file, opts);
    return emit(rep, json_out);
  } catch (const sonc::SyntaxError& e) {
    std::cerr << "input error: " << e.what() << std::endl;
    return 2;
  } catch (const sonc::InvalidInput& e) {
    std::cerr << "input error: " << e.what() << std::endl;
    return 2;
  } catch (const sonc::DimensionMismatch& e) {
    std::cerr << "input error: " << e.what() << std::endl;
    return 2;
  } catch (const sonc::Error& e) {
    std::cerr << "solver error: " << e.what() << std::endl;
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 3;
  }
}
