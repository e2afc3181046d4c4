// secform: command-line front end.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "secform/secform.hpp"

namespace {

using namespace secform;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<int> parse_coords(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw ParseError("bad coordinate '" + item + "'", 0);
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos) throw ParseError("bad coordinate '" + item + "'", 0);
    out.push_back(v);
  }
  return out;
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

std::string matrix_text(const Matrix& m) { return matrix_to_json(m).dump(); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steenrod algebra relations, quadratic refinements and manifold classification data"};
  app.require_subcommand(1);
  std::uint64_t cap = kDefaultCap;
  app.add_option("--max-size", cap, "Cap on |Hom(H, Z4)| for exhaustive operations")->capture_default_str();

  std::function<void()> action;

  // adem
  auto* adem = app.add_subcommand("adem", "Steenrod algebra arithmetic");
  adem->require_subcommand(1);
  std::string expr, expr2;
  int n = 0;
  int vars = 0;

  auto* normalize = adem->add_subcommand("normalize", "Admissible normal form of a sum of Sq words");
  normalize->add_option("expr", expr, "e.g. \"Sq2 Sq3\"")->required();
  normalize->callback([&] { action = [&] { std::cout << steenrod::to_string(steenrod::parse(expr)) << "\n"; }; });

  auto* mul = adem->add_subcommand("mul", "Product of two elements");
  mul->add_option("a", expr)->required();
  mul->add_option("b", expr2)->required();
  mul->callback([&] {
    action = [&] { std::cout << steenrod::to_string(steenrod::parse(expr) * steenrod::parse(expr2)) << "\n"; };
  });

  auto* chi = adem->add_subcommand("chi", "Antipode of an element");
  chi->add_option("expr", expr)->required();
  chi->callback([&] { action = [&] { std::cout << steenrod::to_string(steenrod::chi(steenrod::parse(expr))) << "\n"; }; });

  auto* phi_rel = adem->add_subcommand("phi-relation", "Evaluate the chi relation family at n");
  phi_rel->add_option("--n", n)->required();
  phi_rel->callback([&] { action = [&] { std::cout << steenrod::to_string(steenrod::phi_relation(n)) << "\n"; }; });

  auto* psi_rel = adem->add_subcommand("psi-relation", "Evaluate the Sq2 Sq1 relation family at n");
  psi_rel->add_option("--n", n)->required();
  psi_rel->callback([&] {
    action = [&] {
      const auto r = steenrod::psi_relation(n);
      std::cout << "raw: " << steenrod::to_string(r.raw) << "\nreduced: " << steenrod::to_string(r.reduced) << "\n";
    };
  });

  auto* oracle = adem->add_subcommand("oracle", "Apply a sum of Sq words to x1 ... xM");
  oracle->add_option("expr", expr)->required();
  oracle->add_option("--vars", vars, "Number of variables M")->required();
  oracle->callback([&] {
    action = [&] {
      std::cout << steenrod::to_string(steenrod::polynomial_action(steenrod::parse_raw(expr), vars)) << "\n";
    };
  });

  // homotopy
  auto* hom = app.add_subcommand("homotopy", "Stable homotopy tables");
  hom->require_subcommand(1);
  std::string g1, g2;

  auto* em = hom->add_subcommand("em", "2n-th stable homotopy group of K(G, n-1)");
  em->add_option("--n", n)->required();
  em->add_option("--group", g1)->required();
  em->callback([&] {
    action = [&] { std::cout << render(homotopy::stable_homotopy_em(n, parse_group(g1))) << "\n"; };
  });

  auto* cross = hom->add_subcommand("cross", "Kunneth cross term for cyclic G1, G2");
  cross->add_option("G1", g1)->required();
  cross->add_option("G2", g2)->required();
  cross->callback([&] {
    action = [&] { std::cout << render(homotopy::kunneth_cross(parse_group(g1), parse_group(g2))) << "\n"; };
  });

  auto* so = hom->add_subcommand("so", "pi_n(SO(n))");
  so->add_option("--n", n)->required();
  so->callback([&] { action = [&] { std::cout << render(homotopy::pi_n_so_n(n)) << "\n"; }; });

  auto* split = hom->add_subcommand("split-check", "Direct-sum splitting of the closed form");
  split->add_option("G1", g1)->required();
  split->add_option("G2", g2)->required();
  split->add_option("--n", n)->required();
  split->callback([&] {
    action = [&] { std::cout << bool_text(homotopy::splitting_check(parse_group(g1), parse_group(g2), n)) << "\n"; };
  });

  // forms
  auto* forms = app.add_subcommand("forms", "Quadratic refinements and their invariants");
  forms->require_subcommand(1);
  std::string file_a, file_b, at;

  auto* verify = forms->add_subcommand("verify", "Exhaustively check the quadratic law");
  verify->add_option("triple", file_a)->required();
  verify->callback([&] {
    action = [&] {
      const auto q = quadratic(parse_triple(read_file(file_a)));
      std::cout << bool_text(verify_quadratic_law(q, cap)) << "\n";
    };
  });

  auto* eval = forms->add_subcommand("eval", "Evaluate phi at a Z4-dual element");
  eval->add_option("triple", file_a)->required();
  eval->add_option("--at", at, "Comma-separated dual coordinates")->required();
  eval->callback([&] {
    action = [&] {
      const auto q = quadratic(parse_triple(read_file(file_a)));
      std::cout << evaluate_phi(q, DualElement{Coefficients::z4, parse_coords(at)}).to_string() << "\n";
    };
  });

  auto* gauss = forms->add_subcommand("gauss", "Value counts and Gauss sum");
  gauss->add_option("triple", file_a)->required();
  gauss->callback([&] {
    action = [&] {
      const auto q = quadratic(parse_triple(read_file(file_a)));
      const auto g = gauss_sum(q, cap);
      for (const auto& [v, c] : g.counts) std::cout << v.to_string() << ": " << c << "\n";
      std::cout << "sum: " << g.real_part << (g.imag_part < 0 ? " - " : " + ") << std::abs(g.imag_part) << "i\n";
      std::cout << "values: " << to_string(values_subgroup(q, cap)) << "\n";
    };
  });

  auto* arf_cmd = forms->add_subcommand("arf", "Arf invariant of a Z2 quadratic form");
  arf_cmd->add_option("form", file_a)->required();
  arf_cmd->callback([&] { action = [&] { std::cout << arf(parse_z2_form(read_file(file_a))) << "\n"; }; });

  auto* iso = forms->add_subcommand("isometric", "Decide isometry of two triples");
  iso->add_option("a", file_a)->required();
  iso->add_option("b", file_b)->required();
  iso->callback([&] {
    action = [&] {
      const auto w = isometry_witness(parse_triple(read_file(file_a)), parse_triple(read_file(file_b)), cap);
      std::cout << bool_text(w.has_value()) << "\n";
      if (w) std::cout << "witness: " << matrix_text(w->matrix) << "\n";
    };
  });

  auto* witt = forms->add_subcommand("witt", "Decide Witt equivalence of two quadratic functions");
  witt->add_option("a", file_a)->required();
  witt->add_option("b", file_b)->required();
  witt->callback([&] {
    action = [&] {
      const auto qa = quadratic(parse_triple(read_file(file_a)));
      const auto qb = quadratic(parse_triple(read_file(file_b)));
      std::cout << bool_text(witt_equivalent(qa, qb, cap)) << "\n";
    };
  });

  // classify
  auto* cls = app.add_subcommand("classify", "Classification data up to isometry");
  cls->require_subcommand(1);
  int delta = 0;
  bool json = false;
  auto* enumerate = cls->add_subcommand("enumerate", "Enumerate classes for a group and dimension parameter n");
  enumerate->add_option("--group", g1)->required();
  enumerate->add_option("--n", n)->required();
  enumerate->add_option("--delta", delta)->check(CLI::IsMember({0, 1}))->capture_default_str();
  enumerate->add_option("--max-size", cap, "Cap on |Hom(H, Z4)|");
  enumerate->add_flag("--json", json, "Machine-readable report");
  enumerate->callback([&] {
    action = [&] {
      const auto e = classify::enumerate_classes(parse_group(g1), n, delta, cap);
      if (json)
        std::cout << classify::report_json(e).dump(2) << "\n";
      else
        std::cout << classify::report_text(e);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (action) action();
  } catch (const secform::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
