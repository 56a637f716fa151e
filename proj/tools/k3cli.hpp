#pragma once

// Command-line front end. `run` parses an argument vector, dispatches to the
// library and returns the JSON report together with the process exit code,
// so the whole CLI can be exercised in-process.
//
// Exit codes: 0 ok, 1 usage or input error, 2 domain error, 3 internal
// inconsistency. `fibration classify` additionally maps IdenticallyZero to 3.

#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "k3/cusp.hpp"
#include "k3/isometry.hpp"
#include "k3/isotropic.hpp"
#include "k3/lattice.hpp"
#include "k3/period.hpp"
#include "k3/short_vectors.hpp"
#include "k3/weierstrass.hpp"

namespace k3::cli {

using Json = nlohmann::ordered_json;

struct Outcome {
  int exit_code = 0;
  Json report;
};

namespace detail {

// ---- JSON encoding -------------------------------------------------------

inline Json encode(const Integer& x) {
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
    return x.convert_to<long long>();
  return x.str();
}

inline Json encode(const Rational& q) {
  if (boost::multiprecision::denominator(q) == 1) return encode(Integer(boost::multiprecision::numerator(q)));
  return to_string(q);
}

template <typename T>
Json encode(const std::vector<T>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(encode(x));
  return out;
}

inline Json encode(const IntMatrix& m) {
  Json out = Json::array();
  for (const auto& row : m.to_rows()) out.push_back(encode(row));
  return out;
}

inline Json encode_columns(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(encode(m.col(j)));
  return out;
}

inline Json encode(const RealVector& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(x);
  return out;
}

inline Json encode(const RealFrame& f) {
  Json out = Json::array();
  for (const auto& v : f.vectors) out.push_back(encode(v));
  return out;
}

inline Json encode(const Signature& s) { return Json::array({s.positive, s.negative, s.null}); }

inline Json encode(const RationalPoly& p) {
  Json coeffs = Json::array();
  for (const auto& c : p.coeffs()) coeffs.push_back(to_string(c));
  return coeffs;
}

inline Json encode(const Place& p) {
  if (p.is_infinity()) return "inf";
  return p.str();
}

// ---- input parsing -------------------------------------------------------

[[noreturn]] inline void bad_input(const std::string& what) { fail(ErrorCode::Parse, what); }

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad_input("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    bad_input("'" + path + "' is not valid JSON: " + e.what());
  }
}

// Inline JSON (starting with '[' or '{') or a path to a JSON file.
inline Json json_argument(const std::string& text) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i < text.size() && (text[i] == '[' || text[i] == '{')) {
    try {
      return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      bad_input(std::string("inline JSON: ") + e.what());
    }
  }
  return read_json_file(text);
}

inline Rational rational_of(const Json& j) {
  if (j.is_number_integer()) return Rational(Integer(j.get<long long>()));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  bad_input("expected an exact integer or \"p/q\" string, got " + j.dump());
}

inline Integer integer_of(const Json& j) {
  const Rational q = rational_of(j);
  if (boost::multiprecision::denominator(q) != 1) bad_input("expected an integer, got " + j.dump());
  return boost::multiprecision::numerator(q);
}

inline IntMatrix int_matrix_of(const Json& rows) {
  if (!rows.is_array()) bad_input("expected a matrix (array of rows)");
  std::vector<IntVector> out;
  for (const auto& row : rows) {
    if (!row.is_array()) bad_input("matrix rows must be arrays");
    IntVector r;
    for (const auto& x : row) r.push_back(integer_of(x));
    out.push_back(std::move(r));
  }
  return IntMatrix::from_rows(out);
}

inline GramLattice builtin_lattice(const std::string& name) {
  if (name == "u") return hyperbolic_plane();
  if (name == "e8m") return e8_minus();
  if (name == "k3") return k3_lattice();
  if (name == "he") return standard_quotient_lattice();
  bad_input("unknown builtin lattice '" + name + "' (expected u, e8m, k3 or he)");
}

inline GramLattice lattice_file(const std::string& path) {
  const Json j = json_argument(path);
  if (!j.contains("gram")) bad_input("lattice file needs a \"gram\" field");
  IntMatrix g = int_matrix_of(j["gram"]);
  if (j.contains("rank") && j["rank"].get<std::size_t>() != g.rows())
    fail(ErrorCode::DimensionMismatch, "\"rank\" does not match the Gram matrix");
  return GramLattice(std::move(g));
}

// "1,0,-2", "[1,0,-2]", a {"coords": [...]} file, or a comma list containing
// "..." which stands for as many zeros as needed to reach `rank`.
inline IntVector vector_argument(const std::string& text, std::size_t rank) {
  const bool inline_list = text.find_first_not_of("0123456789-+,. \t") == std::string::npos && !text.empty();
  if (!inline_list) {
    const Json j = json_argument(text);
    const Json& coords = j.is_object() ? j.at("coords") : j;
    IntVector v;
    for (const auto& x : coords) v.push_back(integer_of(x));
    if (v.size() != rank) fail(ErrorCode::DimensionMismatch, "vector has length " + std::to_string(v.size()));
    return v;
  }
  std::vector<std::string> tokens;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) {
    tok.erase(std::remove_if(tok.begin(), tok.end(), [](unsigned char c) { return std::isspace(c); }), tok.end());
    tokens.push_back(tok);
  }
  const auto dots = std::count(tokens.begin(), tokens.end(), "...");
  if (dots > 1) bad_input("at most one '...' per vector");
  IntVector v;
  for (const auto& tok : tokens) {
    if (tok == "...") {
      if (tokens.size() - 1 > rank) fail(ErrorCode::DimensionMismatch, "too many coordinates");
      v.insert(v.end(), rank - (tokens.size() - 1), Integer(0));
      continue;
    }
    const Rational q = parse_rational(tok);
    if (boost::multiprecision::denominator(q) != 1) bad_input("vector coordinates must be integers");
    v.push_back(boost::multiprecision::numerator(q));
  }
  if (v.size() != rank)
    fail(ErrorCode::DimensionMismatch,
         "vector has length " + std::to_string(v.size()) + ", lattice rank is " + std::to_string(rank));
  return v;
}

// Recursive-descent parser for polynomials in s with rational literals:
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*'? factor)*
//   factor := atom ('^' integer)?
//   atom   := integer ('/' integer)? | 's' | '(' expr ')'
class PolyParser {
 public:
  explicit PolyParser(std::string text) : text_(std::move(text)) {}

  RationalPoly parse() {
    RationalPoly p = expr();
    skip();
    if (pos_ != text_.size()) error("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    bad_input("polynomial '" + text_ + "' at position " + std::to_string(pos_) + ": " + what);
  }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  bool at_atom() {
    skip();
    return pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == 's' ||
                                   text_[pos_] == '(');
  }
  Integer integer() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) error("expected a number");
    return Integer(text_.substr(start, pos_ - start));
  }
  RationalPoly expr() {
    bool negative = false;
    if (peek('+') || peek('-')) negative = text_[pos_++] == '-';
    RationalPoly acc = term();
    if (negative) acc = -acc;
    while (peek('+') || peek('-')) {
      const bool minus = text_[pos_++] == '-';
      const RationalPoly t = term();
      acc = minus ? acc - t : acc + t;
    }
    return acc;
  }
  RationalPoly term() {
    RationalPoly acc = factor();
    while (true) {
      if (peek('*')) {
        ++pos_;
        acc = acc * factor();
      } else if (at_atom()) {
        acc = acc * factor();
      } else {
        return acc;
      }
    }
  }
  RationalPoly factor() {
    RationalPoly base = atom();
    if (peek('^')) {
      ++pos_;
      const Integer k = integer();
      if (k > 64) error("exponent too large");
      base = base.pow(k.convert_to<unsigned>());
    }
    return base;
  }
  RationalPoly atom() {
    skip();
    if (pos_ >= text_.size()) error("unexpected end of input");
    if (text_[pos_] == 's') {
      ++pos_;
      return RationalPoly::monomial(1, 1);
    }
    if (text_[pos_] == '(') {
      ++pos_;
      RationalPoly inner = expr();
      if (!peek(')')) error("expected ')'");
      ++pos_;
      return inner;
    }
    const Integer num = integer();
    if (peek('/')) {
      ++pos_;
      const Integer den = integer();
      if (den == 0) error("zero denominator");
      return RationalPoly::constant(Rational(num, den));
    }
    return RationalPoly::constant(Rational(num));
  }

  std::string text_;
  std::size_t pos_ = 0;
};

// A coefficient list (inline JSON or file) or an expression in s.
inline RationalPoly polynomial_argument(const std::string& text) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  const bool looks_json = i < text.size() && (text[i] == '[' || text[i] == '{');
  std::error_code ec;
  if (looks_json || (text.find(".json") != std::string::npos && std::filesystem::exists(text, ec))) {
    const Json j = json_argument(text);
    const Json& coeffs = j.is_object() ? j.at("coeffs") : j;
    RatVector c;
    for (const auto& x : coeffs) c.push_back(rational_of(x));
    return RationalPoly(std::move(c));
  }
  return PolyParser(text).parse();
}

inline RationalPlane plane_argument(const std::string& text, const GramLattice& l) {
  const Json j = json_argument(text);
  const Json& spanners = j.is_object() ? j.at("spanners") : j;
  RationalPlane plane{l, {}};
  for (const auto& row : spanners) {
    RatVector v;
    for (const auto& x : row) v.push_back(rational_of(x));
    if (v.size() != l.rank()) fail(ErrorCode::DimensionMismatch, "spanner length");
    plane.spanners.push_back(std::move(v));
  }
  return plane;
}

inline RealFrame frame_argument(const std::string& text, const GramLattice& l) {
  const Json j = json_argument(text);
  const Json& vectors = j.is_object() ? j.at("vectors") : j;
  RealFrame f{real_form(l), {}};
  for (const auto& row : vectors) {
    if (row.size() != l.rank()) fail(ErrorCode::DimensionMismatch, "frame vector length");
    RealVector v(static_cast<Eigen::Index>(row.size()));
    for (std::size_t i = 0; i < row.size(); ++i) {
      const Json& x = row[i];
      v(static_cast<Eigen::Index>(i)) = x.is_string() ? rational_of(x).convert_to<double>() : x.get<double>();
    }
    f.vectors.push_back(std::move(v));
  }
  return f;
}

inline Json lattice_summary(const GramLattice& l) {
  Json r;
  r["rank"] = l.rank();
  r["even"] = is_even(l);
  r["unimodular"] = is_unimodular(l);
  r["determinant"] = encode(determinant(l));
  r["signature"] = encode(signature(l));
  return r;
}

inline int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse: return 1;
    case ErrorCode::Internal:
    case ErrorCode::InconsistentOrders: return 3;
    default: return 2;
  }
}

}  // namespace detail

inline Outcome run(const std::vector<std::string>& argv) {
  using namespace detail;
  CLI::App app{"Exact lattice and elliptic-fibration toolkit for K3 surfaces", "k3tool"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json_flag = false;
  std::uint64_t seed = 0;
  app.add_flag("--json", json_flag, "JSON output (the only output mode)");
  app.add_option("--seed", seed, "seed for period-domain sampling");

  Json inputs = Json::object();
  std::string command;
  std::function<Json()> action;

  // Lattice selection shared by most subcommands.
  struct LatticeChoice {
    std::string builtin = "k3";
    std::string file;
  };
  auto add_lattice = [](CLI::App* sub, LatticeChoice& choice, const std::string& fallback) {
    choice.builtin = fallback;
    sub->add_option("--builtin", choice.builtin, "builtin lattice: u, e8m, k3, he");
    sub->add_option("--lattice", choice.file, "lattice file {\"rank\", \"gram\"}");
  };
  auto load = [&](const LatticeChoice& choice) {
    if (!choice.file.empty()) {
      inputs["lattice"] = choice.file;
      return lattice_file(choice.file);
    }
    inputs["builtin"] = choice.builtin;
    return builtin_lattice(choice.builtin);
  };

  // lattice info | sum | signature
  auto* lattice_cmd = app.add_subcommand("lattice", "lattice invariants");
  lattice_cmd->require_subcommand(1);
  LatticeChoice info_l, sig_l;
  auto* info = lattice_cmd->add_subcommand("info", "evenness, determinant, signature");
  add_lattice(info, info_l, "k3");
  info->callback([&] {
    command = "lattice info";
    action = [&] { return lattice_summary(load(info_l)); };
  });
  auto* sig = lattice_cmd->add_subcommand("signature", "signature (p, n, z)");
  add_lattice(sig, sig_l, "k3");
  sig->callback([&] {
    command = "lattice signature";
    action = [&] { return Json{{"signature", encode(signature(load(sig_l)))}}; };
  });
  std::vector<std::string> sum_builtins, sum_files;
  auto* sum = lattice_cmd->add_subcommand("sum", "orthogonal direct sum");
  sum->add_option("--builtin", sum_builtins, "builtin summands, in order");
  sum->add_option("--lattice", sum_files, "lattice-file summands, after the builtins");
  sum->callback([&] {
    command = "lattice sum";
    action = [&] {
      inputs["builtin"] = sum_builtins;
      inputs["lattice"] = sum_files;
      if (sum_builtins.empty() && sum_files.empty()) bad_input("lattice sum needs at least one summand");
      GramLattice out;
      for (const auto& b : sum_builtins) out = direct_sum(out, builtin_lattice(b));
      for (const auto& f : sum_files) out = direct_sum(out, lattice_file(f));
      Json r = lattice_summary(out);
      r["gram"] = encode(out.gram());
      return r;
    };
  });

  // quotient / partner
  LatticeChoice q_l, p_l;
  std::string q_e, p_e;
  auto* quotient = app.add_subcommand("quotient", "H(e) = e-perp / Ze");
  add_lattice(quotient, q_l, "k3");
  quotient->add_option("--e", q_e, "primitive isotropic vector")->required();
  quotient->callback([&] {
    command = "quotient";
    action = [&] {
      const GramLattice h = load(q_l);
      inputs["e"] = q_e;
      const IsotropicQuotient q = quotient_by_isotropic(h, vector_argument(q_e, h.rank()));
      Json r = lattice_summary(q.quotient);
      r["e"] = encode(q.e);
      r["quotient_gram"] = encode(q.quotient.gram());
      r["lift_basis"] = encode_columns(q.lift_basis);
      return r;
    };
  });
  auto* partner = app.add_subcommand("partner", "hyperbolic partner e' of e");
  add_lattice(partner, p_l, "k3");
  partner->add_option("--e", p_e, "primitive isotropic vector")->required();
  partner->callback([&] {
    command = "partner";
    action = [&] {
      const GramLattice h = load(p_l);
      inputs["e"] = p_e;
      const IntVector e = vector_argument(p_e, h.rank());
      const IntVector f = hyperbolic_partner(h, e);
      return Json{{"partner", encode(f)}, {"e_dot_partner", encode(h.inner(e, f))}, {"partner_norm", encode(h.norm(f))}};
    };
  });

  // polarize / dominance
  LatticeChoice pol_l, dom_l;
  std::string pol_e, pol_sigma, dom_e;
  std::vector<std::string> dom_roots;
  auto* polarize = app.add_subcommand("polarize", "polarization 3e + sigma from a section");
  add_lattice(polarize, pol_l, "k3");
  polarize->add_option("--e", pol_e, "fiber class")->required();
  polarize->add_option("--sigma", pol_sigma, "section class")->required();
  polarize->callback([&] {
    command = "polarize";
    action = [&] {
      const GramLattice h = load(pol_l);
      inputs["e"] = pol_e;
      inputs["sigma"] = pol_sigma;
      const IntVector e = vector_argument(pol_e, h.rank()), s = vector_argument(pol_sigma, h.rank());
      const IntVector kappa = section_polarization(h, e, s);
      return Json{{"kappa", encode(kappa)}, {"kappa_squared", encode(h.norm(kappa))}};
    };
  });
  auto* dominance = app.add_subcommand("dominance", "fibration verdict for e against a root list");
  add_lattice(dominance, dom_l, "k3");
  dominance->add_option("--e", dom_e, "isotropic class")->required();
  dominance->add_option("--root", dom_roots, "effective root (repeatable)");
  dominance->callback([&] {
    command = "dominance";
    action = [&] {
      const GramLattice h = load(dom_l);
      inputs["e"] = dom_e;
      inputs["roots"] = dom_roots;
      std::vector<IntVector> roots;
      for (const auto& r : dom_roots) roots.push_back(vector_argument(r, h.rank()));
      return Json{{"verdict", to_string(dominance_classify(h, vector_argument(dom_e, h.rank()), roots))}};
    };
  });

  // reflect / eichler
  LatticeChoice ref_l, eich_l;
  std::string ref_alpha, ref_x, eich_e, eich_gamma, eich_x;
  auto* reflect = app.add_subcommand("reflect", "reflection in a (-2)-vector");
  add_lattice(reflect, ref_l, "k3");
  reflect->add_option("--alpha", ref_alpha, "root")->required();
  reflect->add_option("--x", ref_x, "vector to transform");
  reflect->callback([&] {
    command = "reflect";
    action = [&] {
      const GramLattice h = load(ref_l);
      inputs["alpha"] = ref_alpha;
      const Isometry s = reflection(h, vector_argument(ref_alpha, h.rank()));
      Json r{{"matrix", encode(s.matrix())}};
      if (!ref_x.empty()) {
        inputs["x"] = ref_x;
        r["image"] = encode(s(vector_argument(ref_x, h.rank())));
      }
      return r;
    };
  });
  auto* eich = app.add_subcommand("eichler", "Eichler transformation E(e ^ gamma)");
  add_lattice(eich, eich_l, "k3");
  eich->add_option("--e", eich_e, "isotropic vector")->required();
  eich->add_option("--gamma", eich_gamma, "vector in e-perp")->required();
  eich->add_option("--x", eich_x, "vector to transform");
  eich->callback([&] {
    command = "eichler";
    action = [&] {
      const GramLattice h = load(eich_l);
      inputs["e"] = eich_e;
      inputs["gamma"] = eich_gamma;
      const Isometry m = eichler(h, vector_argument(eich_e, h.rank()), vector_argument(eich_gamma, h.rank()));
      Json r{{"matrix", encode(m.matrix())}};
      if (!eich_x.empty()) {
        inputs["x"] = eich_x;
        r["image"] = encode(m(vector_argument(eich_x, h.rank())));
      }
      return r;
    };
  });

  // spinor
  LatticeChoice sp_l;
  std::string sp_isometry, sp_reflect, sp_frame = "positive";
  bool sp_minus = false;
  auto* spinor = app.add_subcommand("spinor", "spinor orientation sign of an isometry");
  add_lattice(spinor, sp_l, "k3");
  auto* sp_group = spinor->add_option_group("isometry");
  sp_group->add_option("--isometry", sp_isometry, "isometry {\"matrix\": ...} (file or inline)");
  sp_group->add_option("--reflect", sp_reflect, "use the reflection in this root");
  sp_group->add_flag("--minus-identity", sp_minus, "use -id");
  sp_group->require_option(1);
  spinor->add_option("--frame", sp_frame, "positive | hyperbolic | frame file {\"vectors\"} with exact entries");
  spinor->callback([&] {
    command = "spinor";
    action = [&] {
      const GramLattice h = load(sp_l);
      std::optional<Isometry> m;
      if (!sp_isometry.empty()) {
        inputs["isometry"] = sp_isometry;
        const Json j = json_argument(sp_isometry);
        m = verify_isometry(h, int_matrix_of(j.is_object() ? j.at("matrix") : j));
      } else if (!sp_reflect.empty()) {
        inputs["reflect"] = sp_reflect;
        m = reflection(h, vector_argument(sp_reflect, h.rank()));
      } else {
        inputs["minus_identity"] = true;
        m = minus_identity(h);
      }
      inputs["frame"] = sp_frame;
      SpinorFrame frame;
      if (sp_frame == "positive") {
        frame = positive_frame(h);
      } else if (sp_frame == "hyperbolic") {
        frame = hyperbolic_frame(h, signature(h).positive);
      } else {
        const Json j = json_argument(sp_frame);
        for (const auto& row : j.is_object() ? j.at("vectors") : j) {
          RatVector v;
          for (const auto& x : row) v.push_back(rational_of(x));
          frame.vectors.push_back(std::move(v));
        }
      }
      return Json{{"sign", spinor_sign(h, *m, frame)}};
    };
  });

  // connect-lifts / involution
  LatticeChoice cl_l, inv_l;
  std::string cl_e, cl_alpha, cl_alpha_prime, inv_e, inv_sigma;
  auto* connect = app.add_subcommand("connect-lifts", "Eichler transformation carrying alpha to alpha'");
  add_lattice(connect, cl_l, "k3");
  connect->add_option("--e", cl_e, "isotropic vector")->required();
  connect->add_option("--alpha", cl_alpha, "root in e-perp")->required();
  connect->add_option("--alpha-prime", cl_alpha_prime, "root alpha + n e")->required();
  connect->callback([&] {
    command = "connect-lifts";
    action = [&] {
      const GramLattice h = load(cl_l);
      inputs["e"] = cl_e;
      inputs["alpha"] = cl_alpha;
      inputs["alpha_prime"] = cl_alpha_prime;
      const IntVector e = vector_argument(cl_e, h.rank());
      const IntVector a = vector_argument(cl_alpha, h.rank()), b = vector_argument(cl_alpha_prime, h.rank());
      const Isometry m = connect_lifts(h, e, a, b);
      const IsotropicQuotient q = quotient_by_isotropic(h, e);
      return Json{{"matrix", encode(m.matrix())},
                  {"image_of_alpha", encode(m(a))},
                  {"trivial_on_quotient", induced_on_quotient(q, m).is_identity()}};
    };
  });
  auto* involution = app.add_subcommand("involution", "involution fixing e and sigma, -1 on their complement");
  add_lattice(involution, inv_l, "k3");
  involution->add_option("--e", inv_e, "fiber class")->required();
  involution->add_option("--sigma", inv_sigma, "section class")->required();
  involution->callback([&] {
    command = "involution";
    action = [&] {
      const GramLattice h = load(inv_l);
      inputs["e"] = inv_e;
      inputs["sigma"] = inv_sigma;
      const IntVector e = vector_argument(inv_e, h.rank());
      const Isometry m = involution_class(h, e, vector_argument(inv_sigma, h.rank()));
      const IsotropicQuotient q = quotient_by_isotropic(h, e);
      const Isometry induced = induced_on_quotient(q, m);
      return Json{{"matrix", encode(m.matrix())},
                  {"spinor_sign", spinor_sign(h, m, positive_frame(h))},
                  {"minus_identity_on_quotient", induced.matrix() == -IntMatrix::identity(q.rank())}};
    };
  });

  // roots / interior
  LatticeChoice roots_l, int_l;
  std::string roots_plane, int_plane;
  long long roots_norm = -2;
  bool roots_count_only = false;
  auto* roots = app.add_subcommand("roots", "vectors of given norm in a definite lattice, or roots orthogonal to a plane");
  add_lattice(roots, roots_l, "e8m");
  roots->add_option("--norm", roots_norm, "target norm (definite lattices)");
  roots->add_option("--plane", roots_plane, "rational positive plane {\"spanners\"}");
  roots->add_flag("--count-only", roots_count_only, "omit the vector list");
  roots->callback([&] {
    command = "roots";
    action = [&] {
      const GramLattice l = load(roots_l);
      std::vector<IntVector> found;
      if (!roots_plane.empty()) {
        inputs["plane"] = roots_plane;
        found = roots_in_orthogonal_complement(l, plane_argument(roots_plane, l));
      } else {
        inputs["norm"] = roots_norm;
        const Signature s = signature(l);
        const Definiteness sign = s.positive == 0 ? Definiteness::Negative : Definiteness::Positive;
        found = enumerate_norm_vectors(DefiniteLattice(l.gram(), sign), roots_norm);
      }
      Json r{{"count", found.size()}};
      if (!roots_count_only) r["vectors"] = encode(found);
      return r;
    };
  });
  auto* interior = app.add_subcommand("interior", "Interior / Wall / DeepWall verdict for a positive plane");
  add_lattice(interior, int_l, "he");
  interior->add_option("--plane", int_plane, "rational positive plane {\"spanners\"}")->required();
  interior->callback([&] {
    command = "interior";
    action = [&] {
      const GramLattice l = load(int_l);
      inputs["plane"] = int_plane;
      const InteriorVerdict v = period_interior_test(l, plane_argument(int_plane, l));
      return Json{{"verdict", to_string(v.kind)}, {"witnesses", encode(v.witnesses)}};
    };
  });

  // period
  LatticeChoice per_l;
  std::string per_frame, per_e;
  std::size_t per_samples = 0;
  auto* period = app.add_subcommand("period", "kappa, Pi, h', h'' and the torsor invariant of a positive 3-frame");
  add_lattice(period, per_l, "k3");
  period->add_option("--frame", per_frame, "frame {\"vectors\": [[...], [...], [...]]}")->required();
  period->add_option("--e", per_e, "primitive isotropic vector")->required();
  period->add_option("--samples", per_samples, "number of twistor-sphere samples");
  period->callback([&] {
    command = "period";
    action = [&] {
      const GramLattice h = load(per_l);
      inputs["frame"] = per_frame;
      inputs["e"] = per_e;
      inputs["seed"] = seed;
      inputs["samples"] = per_samples;
      const RealFrame p = frame_argument(per_frame, h);
      const IntVector e = vector_argument(per_e, h.rank());
      const KappaVector kappa = kappa_from_frame(p, e);
      const RealFrame hp = h_prime(p, e);
      Json r{{"numeric", "float"},
             {"kappa", encode(kappa.coords)},
             {"kappa_norm", p.pair(kappa.coords, kappa.coords)},
             {"pi", encode(hodge_two_plane(p, kappa))},
             {"h_prime", encode(hp)},
             {"h_double_prime", encode(h_double_prime(hp, quotient_by_isotropic(h, e)))},
             {"torsor_invariant", torsor_invariant(p, e)}};
      if (per_samples > 0) {
        Json samples = Json::array();
        for (const auto& k : twistor_sphere_sample(p, per_samples, seed)) samples.push_back(encode(k.coords));
        r["twistor_samples"] = samples;
      }
      return r;
    };
  });

  // fibration classify
  std::string fib_a, fib_b;
  auto* fibration = app.add_subcommand("fibration", "Weierstrass fibrations");
  fibration->require_subcommand(1);
  auto* classify = fibration->add_subcommand("classify", "singular fibers of y^2 = x^3 + a(s) x + b(s)");
  classify->add_option("--a", fib_a, "a(s): coefficient list or expression, deg <= 8")->required();
  classify->add_option("--b", fib_b, "b(s): coefficient list or expression, deg <= 12")->required();
  classify->callback([&] {
    command = "fibration classify";
    action = [&] {
      inputs["a"] = fib_a;
      inputs["b"] = fib_b;
      const WeierstrassModel m(polynomial_argument(fib_a), polynomial_argument(fib_b));
      const FibrationAnalysis a = analyze(m);
      Json fibers = Json::array();
      for (const auto& f : a.fibers) {
        fibers.push_back({{"place", encode(f.place)},
                          {"place_degree", f.place_degree},
                          {"ord_a", f.orders.a.str()},
                          {"ord_b", f.orders.b.str()},
                          {"ord_delta", f.orders.delta.str()},
                          {"kodaira", f.kodaira.str()},
                          {"euler", f.euler},
                          {"monodromy", encode(f.monodromy)}});
      }
      return Json{{"a", encode(m.a())},
                  {"b", encode(m.b())},
                  {"discriminant", encode(discriminant(m))},
                  {"fibers", fibers},
                  {"total_ord_delta", a.summary.total_ord_delta},
                  {"total_euler", a.summary.total_euler},
                  {"is_integral", a.summary.is_integral},
                  {"is_nodal", a.summary.is_nodal},
                  {"minimal", a.summary.minimal}};
    };
  });

  // cusp-braid
  double radius = 0.1;
  int steps = 4096;
  bool clockwise = false;
  auto* cusp = app.add_subcommand("cusp-braid", "winding of the two critical values around the cusp");
  cusp->add_option("--radius", radius, "loop radius |t|")->required();
  cusp->add_option("--steps", steps, "samples along the loop (>= 16)")->required();
  cusp->add_flag("--clockwise", clockwise, "traverse the loop clockwise");
  cusp->callback([&] {
    command = "cusp-braid";
    action = [&] {
      inputs["radius"] = radius;
      inputs["steps"] = steps;
      inputs["clockwise"] = clockwise;
      const double w = braid_winding(radius, steps, clockwise);
      return Json{{"numeric", "float"}, {"winding", w}, {"half_twists", w / std::numbers::pi}};
    };
  });

  Outcome outcome;
  std::vector<const char*> cargs;
  cargs.push_back("k3tool");
  for (const auto& a : argv) cargs.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::CallForHelp&) {
    outcome.report = {{"command", "help"}, {"inputs", Json::object()}, {"result", app.help()}, {"status", "ok"}};
    return outcome;
  } catch (const CLI::ParseError& e) {
    outcome.exit_code = 1;
    outcome.report = {{"command", command},
                      {"inputs", Json::object()},
                      {"result", nullptr},
                      {"status", {{"error", {{"code", "Usage"}, {"message", e.what()}}}}}};
    return outcome;
  }

  outcome.report["command"] = command;
  try {
    Json result = action();
    outcome.report["inputs"] = inputs;
    outcome.report["result"] = std::move(result);
    outcome.report["status"] = "ok";
  } catch (const Error& e) {
    outcome.exit_code = exit_code_for(e.code());
    if (command == "fibration classify" && e.code() == ErrorCode::IdenticallyZero) outcome.exit_code = 3;
    Json error{{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
    if (const auto* nm = dynamic_cast<const NonMinimalError*>(&e)) {
      Json places = Json::array();
      for (const auto& p : nm->places()) places.push_back(encode(p));
      error["places"] = places;
    }
    outcome.report["inputs"] = inputs;
    outcome.report["result"] = nullptr;
    outcome.report["status"] = {{"error", error}};
  } catch (const nlohmann::json::exception& e) {
    outcome.exit_code = 1;
    outcome.report["inputs"] = inputs;
    outcome.report["result"] = nullptr;
    outcome.report["status"] = {{"error", {{"code", "Parse"}, {"message", e.what()}}}};
  } catch (const std::exception& e) {
    outcome.exit_code = 3;
    outcome.report["inputs"] = inputs;
    outcome.report["result"] = nullptr;
    outcome.report["status"] = {{"error", {{"code", "Internal"}, {"message", e.what()}}}};
  }
  return outcome;
}

}  // namespace k3::cli
