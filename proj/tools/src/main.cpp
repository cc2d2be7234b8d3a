#include <iostream>

#include "CLI11.hpp"
#include "kkcli/commands.hpp"

namespace {

struct OutputOptions {
  std::string format = "json";
};

void common_flags(CLI::App* app, kk::cli::CommandOptions& o, OutputOptions& out) {
  app->add_option("--field", o.field, "QQ, GF(p) or a prime; overrides the ring file");
  app->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
  app->add_option("--format", out.format, "json or table")->check(CLI::IsMember({"json", "table"}));
  app->add_flag("--timing", o.timing, "include wall time in the result");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace kk::cli;
  CLI::App app{"Koszul homology, bar-complex Betti numbers and Gröbner certificates for quotient rings"};
  app.require_subcommand(1);

  CommandOptions opts;
  OutputOptions out;

  auto* hom = app.add_subcommand("homology", "bigraded Koszul homology dimensions");
  hom->add_option("ring", opts.ring_path, "ring JSON file")->required();
  hom->add_option("--max-hom", opts.max_hom, "largest homological degree (default n)");
  hom->add_option("--max-int", opts.max_int, "largest internal degree (default n + 3)");
  hom->add_flag("--multigraded", opts.multigraded, "also list multigraded dims (monomial ideals)");
  common_flags(hom, opts, out);

  auto* chk = app.add_subcommand("check", "Koszulness and Poincaré-series identities up to a bound");
  chk->add_option("ring", opts.ring_path, "ring JSON file")->required();
  std::vector<std::string> accepted = check_kinds();
  for (const auto& [alias, kind] : check_aliases()) accepted.push_back(alias);
  chk->add_option("--what", opts.what, "which check")->required()->check(CLI::IsMember(accepted));
  chk->add_option("--bound", opts.bound, "degree bound (koszul 4, strand-koszul 3, low-degree 6, others 8)");
  chk->add_option("--max-int", opts.max_int, "koszul: internal-degree bound (default bound + 2)");
  common_flags(chk, opts, out);

  auto* fam = app.add_subcommand("family", "Gröbner-basis certificates for special families");
  fam->add_option("--family", opts.family, "family")->required()->check(CLI::IsMember(family_kinds()));
  fam->add_option("--ring", opts.ring_path, "ring JSON file (ci, gorenstein, three-rel)");
  fam->add_option("-n", opts.n, "number of variables (path, cycle)");
  fam->add_option("--vars", opts.variables, "variable names (ci)");
  fam->add_option("--quadrics", opts.quadrics, "quadrics (ci)");
  fam->add_option("--bound", opts.bound, "strand bound (path: 5, cycle: 3)");
  common_flags(fam, opts, out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    CommandResult res;
    if (app.got_subcommand(hom)) res = cmd_homology(opts);
    else if (app.got_subcommand(chk)) res = cmd_check(opts);
    else res = cmd_family(opts);
    if (out.format == "json") std::cout << res.doc.dump();
    else std::cout << render_text(res.doc);
    return res.exit_code;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DocumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
