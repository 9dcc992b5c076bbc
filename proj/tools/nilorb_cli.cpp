#include "nilorb/cli.hpp"

#include "CLI11.hpp"

#include <iostream>

using namespace nilorb;

namespace {

void add_job_options(CLI::App* app, cli::JobSpec& spec, std::string& group, bool label) {
  app->add_option("--p", spec.p, "odd prime")->required();
  app->add_option("--n", spec.n, "dimension (checked against the form)");
  app->add_option("--q", spec.q, "form: diag:1,r,w,rw or witt:<deg>:<unit>.<pi>")->required();
  app->add_option("--group", group, "O or SO")->capture_default_str();
  app->add_option("--lambda", spec.lambda, "partition, e.g. 5,3,1");
  app->add_option("--precision", spec.precision, "p-adic precision N (>= 16)")->capture_default_str();
  if (label) {
    app->add_option("--qtup", spec.qtup, "forms on the odd parts in ascending order, ';'-separated");
    app->add_option("--ve", spec.ve, "very even tag I or II");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rational nilpotent orbits of p-adic orthogonal groups"};
  app.require_subcommand(1);
  app.fallthrough();
  int indent = 2;
  app.add_option("--json-indent", indent, "JSON indent, -1 for one line")->capture_default_str();

  cli::JobSpec spec;
  std::string group = "SO";
  auto* count = app.add_subcommand("count", "orbit counts per partition");
  add_job_options(count, spec, group, false);
  count->add_flag("--check", spec.check, "compare with exhaustive counts");
  auto* enumerate = app.add_subcommand("enumerate", "list orbit labels");
  add_job_options(enumerate, spec, group, false);
  auto* represent = app.add_subcommand("represent", "build and verify a Lie triple");
  add_job_options(represent, spec, group, true);
  auto* facet = app.add_subcommand("facet", "facet and dimension counts for a label");
  add_job_options(facet, spec, group, true);

  std::vector<std::int64_t> primes{5, 7};
  int n_max = 8;
  bool sabotage = false;
  auto* selftest = app.add_subcommand("selftest", "run the invariant battery");
  selftest->add_option("--p", primes, "primes")->delimiter(',')->capture_default_str();
  selftest->add_option("--n", n_max, "largest dimension")->capture_default_str();
  selftest->add_option("--precision", spec.precision, "p-adic precision N (>= 16)")->capture_default_str();
  selftest->add_flag("--sabotage", sabotage, "corrupt every triple; the battery must fail");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  cli::Result r;
  try {
    if (!selftest->parsed()) spec.group = cli::parse_group(group);
    if (count->parsed()) r = cli::cmd_count(spec);
    else if (enumerate->parsed()) r = cli::cmd_enumerate(spec);
    else if (represent->parsed()) r = cli::cmd_represent(spec);
    else if (facet->parsed()) r = cli::cmd_facet(spec);
    else r = cli::cmd_selftest(primes, n_max, sabotage, spec.precision);
  } catch (const cli::BadInput& e) {
    std::cout << Json{{"error", e.what()}}.dump(indent) << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cout << Json{{"error", e.what()}}.dump(indent) << "\n";
    return 1;
  }
  std::cout << r.out.dump(indent) << "\n";
  return r.exit_code;
}
