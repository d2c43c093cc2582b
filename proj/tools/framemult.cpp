#include "framemult/cli.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <sstream>

using namespace framemult;

namespace {

std::vector<Index> parse_dims(const std::string& csv) {
  std::vector<Index> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(static_cast<Index>(std::stoll(item)));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"framemult: frame multiplier bounds, diagnostics and certified inversion"};
  app.require_subcommand(1, 1);

  std::string in, out, dims, order, config, fixture;
  double tol = 0.0, tol_lin = 0.0, tol_dual = 0.0;
  long long dim = 0;
  std::vector<std::string> params;
  bool no_oracle = false;
  bool inverse = false;
  std::vector<std::string> catalogue_args;

  const std::pair<const char*, const char*> commands[] = {
      {"bounds", "frame bounds of both families and norm bounds of M"},
      {"diagnose", "necessary-condition traces over the --dims sweep"},
      {"certify", "run the inversion rules in --order and report the certificate"},
      {"invert", "certify and emit the dense inverse"},
      {"apply", "apply M (or its certified inverse with --inverse) to a vector"},
      {"catalogue", "list fixtures or emit one: catalogue list | catalogue emit <id>"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--in", in, "input JSON (spec or fixture reference)");
    sub->add_option("--out", out, "write the report here instead of stdout");
    sub->add_option("--dims", dims, "sweep dimensions, e.g. 8,16,32,64");
    sub->add_option("--tol", tol, "certificate verification tolerance");
    sub->add_option("--tol-lin", tol_lin, "relative tolerance for linear identities");
    sub->add_option("--tol-dual", tol_dual, "dual-pair tolerance scale");
    sub->add_option("--order", order, "rule order, e.g. riesz,gphi,p1,cp1,p3,mpos,p4");
    sub->add_flag("--no-oracle", no_oracle, "verify by random probes only");
    sub->add_option("--config", config, "JSON config; flags override it");
    sub->add_option("--fixture", fixture, "catalogue fixture id instead of --in");
    sub->add_option("--param", params, "fixture parameter name=value")->take_all();
    sub->add_option("--dim", dim, "truncation dimension");
    if (std::string(name) == "apply") sub->add_flag("--inverse", inverse, "apply M^-1 instead of M");
    if (std::string(name) == "catalogue") sub->add_option("args", catalogue_args, "list | emit <id>");
  }

  CLI11_PARSE(app, argc, argv);

  RunResult result;
  std::optional<std::string> out_path;
  try {
    JobConfig c;
    CLI::App* sub = app.get_subcommands().front();
    if (!config.empty()) c = merge_config(c, read_json_file(config));
    c.command = command_from_string(sub->get_name());
    if (sub->count("--in")) c.in = in;
    if (sub->count("--out")) c.out = out;
    if (sub->count("--dims")) c.dims = parse_dims(dims);
    if (sub->count("--tol")) c.tol.tol_inv = tol;
    if (sub->count("--tol-lin")) c.tol.tol_lin = tol_lin;
    if (sub->count("--tol-dual")) c.tol.tol_dual_scale = tol_dual;
    if (sub->count("--order")) c.order = parse_order(order);
    if (no_oracle) c.oracle = false;
    if (sub->count("--fixture")) c.fixture = fixture;
    if (sub->count("--dim")) c.dim = static_cast<Index>(dim);
    for (const std::string& p : params) {
      const auto eq = p.find('=');
      if (eq == std::string::npos) {
        throw Error(ErrorCode::invalid_argument, "--param expects name=value, got '" + p + "'");
      }
      c.params[p.substr(0, eq)] = std::stod(p.substr(eq + 1));
    }
    c.apply_inverse = inverse;
    if (!catalogue_args.empty()) c.catalogue_action = catalogue_args[0];
    if (catalogue_args.size() > 1) c.catalogue_target = catalogue_args[1];
    out_path = c.out;
    result = run(c);
  } catch (const std::exception& e) {
    result = {1, error_report(e)};
  }

  const std::string text = result.report.dump(2);
  if (out_path) {
    try {
      write_json_file(*out_path, result.report);
    } catch (const std::exception& e) {
      std::cerr << error_report(e).dump() << "\n";
      return 1;
    }
  } else {
    std::cout << text << "\n";
  }
  if (result.exit_code == 1) std::cerr << result.report.dump() << "\n";
  return result.exit_code;
}
