#include "ncurv/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"ncurv: Tanaka prolongs, structure functions and nonholonomic distributions"};
  app.require_subcommand(1);
  ncurv::JobSpec job;
  std::string orders, method = "shchepochkina";
  int cap = -1;

  auto add_input = [&](CLI::App* c) {
    c->add_option("--builtin", job.builtin, "builtin algebra: abelian:N, heisenberg:R, engel");
    c->add_option("--input", job.input_path, "algebra or distribution JSON file");
    c->add_option("--pfaff", job.pfaff, "Pfaff system, forms separated by ';'");
    c->add_option("--fields", job.fields, "spanning fields, separated by ';'");
    c->add_option("--n-vars", job.n_vars, "number of variables (default: largest index used)");
    c->add_option("--points", job.points, "sample points \"(..);(..)\" (first one is the base point)");
  };
  auto add_tower = [&](CLI::App* c) {
    c->add_option("--g0", job.g0, "der (default) or o")->check(CLI::IsMember({"der", "o"}));
    c->add_option("--method", method, "shchepochkina (default) or cartan")
        ->check(CLI::IsMember({"shchepochkina", "cartan"}));
    c->add_option("--cap", cap, "top degree of the truncated tower");
  };
  auto add_common = [&](CLI::App* c) {
    c->add_option("--json", job.json_path, "also write the JSON report here");
    c->add_flag("!--serial", job.parallel, "compute cohomology blocks one at a time");
  };

  auto* symbol = app.add_subcommand("symbol", "growth vectors, regularity and symbol algebra of a distribution");
  add_input(symbol);
  add_common(symbol);

  auto* prolong = app.add_subcommand("prolong", "truncated prolong tower");
  add_input(prolong);
  add_tower(prolong);
  add_common(prolong);

  auto* cohomology = app.add_subcommand("cohomology", "H^s(g-; tower) by order");
  add_input(cohomology);
  add_tower(cohomology);
  cohomology->add_option("--s", job.s, "cochain degree (default 2)");
  cohomology->add_option("--orders", orders, "order range LO..HI (default s-d..4)");
  add_common(cohomology);

  auto* flat = app.add_subcommand("flat-check", "do all structure functions in the range vanish");
  add_input(flat);
  add_tower(flat);
  flat->add_option("--orders", orders, "order range LO..HI (default 2-d..4)");
  add_common(flat);

  auto* engel = app.add_subcommand("verify-engel", "reproduction checks for the Engel distribution");
  add_common(engel);

  auto* contact = app.add_subcommand("verify-contact", "reproduction checks for contact structures");
  contact->add_option("--r", job.r, "heis(r), 2r+1 variables (default 1)");
  contact->add_option("--orders", orders, "order range LO..HI (default 0..6 for r = 1, 0..4 otherwise)");
  contact->add_option("--cap", cap, "tower cap (default: orders HI - 1)");
  add_common(contact);

  CLI11_PARSE(app, argc, argv);

  try {
    job.command = *ncurv::parse_command(app.get_subcommands().front()->get_name());
    if (!orders.empty()) job.orders = ncurv::parse_orders(orders);
    if (cap >= 0) job.cap = cap;
    job.method = method == "cartan" ? ncurv::ProlongMethod::cartan : ncurv::ProlongMethod::shchepochkina;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ncurv::kExitError;
  }
  return ncurv::run(job, std::cout, std::cerr);
}
