#pragma once

// Command-line front end: one subcommand per computation, stable text output.
//
// Two output formats are supported.  `human` prints labeled, readable lines;
// `records` prints line-oriented `key=value` pairs (rationals as p/q) so that
// runs with identical arguments and seed are byte-identical and easy to diff.
// The ARQUIVER_FORMAT environment variable picks the default; --format
// overrides it per run.  Randomized subcommands draw from a fixed default
// seed, overridable with --seed.
//
// Exit codes: 0 success, 1 a checked identity failed (the message carries the
// identity's short tag), 2 malformed input or usage.

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dimvec.hpp"
#include "duality.hpp"
#include "errors.hpp"
#include "homext.hpp"
#include "knitting.hpp"
#include "ktheory.hpp"
#include "matrix.hpp"
#include "quiver.hpp"
#include "repops.hpp"
#include "representation.hpp"
#include "tau.hpp"

namespace arq {

enum class OutputFormat { human, records };

namespace detail {

constexpr unsigned long long kDefaultSeed = 20260822ULL;

inline const char* kUsage =
    "usage: arquiver <command> [options]\n"
    "\n"
    "commands:\n"
    "  cartan <quiver>                  print the Cartan matrix\n"
    "  coxeter <quiver>                 print Cartan, twist, dual twist and\n"
    "                                   right twist matrices; check they agree\n"
    "  roots <quiver>                   list positive roots (Dynkin only)\n"
    "  regular <quiver> --weight v      test a weight for regularity\n"
    "  knit <quiver>                    knit and print the mesh category\n"
    "  hom <quiver> <M> <N>             dim Hom(M, N)\n"
    "  ext <quiver> <M> <N>             dim Ext1(M, N)\n"
    "  tau <quiver> <M>                 translate of M, as a representation\n"
    "  euler <quiver> <d> <e>           Euler form of two class vectors\n"
    "  hrr <quiver> <M> <N>             pairing of classes vs hom - ext\n"
    "  chern <quiver> <M>               class of M in the weight space\n"
    "  trace-check <quiver> <M> --weight v [--samples k]\n"
    "                                   weighted trace identity on M\n"
    "  hh0 <quiver>                     degree-zero symmetric functions\n"
    "  diagram normalize <expr>         normal form of a duality expression\n"
    "  diagram equiv <e1> <e2>          decide equivalence of two expressions\n"
    "  diagram zigzag <morphism>        snake-reduce a unit/counit diagram\n"
    "\n"
    "options:\n"
    "  --format human|records   output style (default: $ARQUIVER_FORMAT or human)\n"
    "  --seed <n>               seed for randomized checks\n"
    "  --weight <v>             comma-separated rational weight\n"
    "  --samples <k>            sample count for randomized checks\n"
    "\n"
    "vectors are comma-separated, e.g. --weight 1,1 or a class vector 1,2,1\n";

struct CliRequest {
  std::vector<std::string> positional;
  OutputFormat format = OutputFormat::human;
  unsigned long long seed = kDefaultSeed;
  std::optional<std::string> weight;
  size_t samples = 10;
};

inline CliRequest parse_cli_args(const std::vector<std::string>& args) {
  CliRequest req;
  const char* env = std::getenv("ARQUIVER_FORMAT");
  if (env != nullptr) {
    std::string v(env);
    if (v == "records")
      req.format = OutputFormat::records;
    else if (v == "human" || v.empty())
      req.format = OutputFormat::human;
    else
      throw input_error("unknown output format '" + v +
                        "' in ARQUIVER_FORMAT");
  }
  auto need_value = [&](size_t i, const std::string& flag) {
    if (i + 1 >= args.size())
      throw input_error("option " + flag + " needs a value");
    return args[i + 1];
  };
  for (size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a == "--format") {
      std::string v = need_value(i++, a);
      if (v == "human")
        req.format = OutputFormat::human;
      else if (v == "records")
        req.format = OutputFormat::records;
      else
        throw input_error("unknown output format '" + v + "'");
    } else if (a == "--seed") {
      std::string v = need_value(i++, a);
      try {
        req.seed = std::stoull(v);
      } catch (const std::exception&) {
        throw input_error("bad seed '" + v + "'");
      }
    } else if (a == "--weight") {
      req.weight = need_value(i++, a);
    } else if (a == "--samples") {
      std::string v = need_value(i++, a);
      try {
        req.samples = std::stoul(v);
      } catch (const std::exception&) {
        throw input_error("bad sample count '" + v + "'");
      }
    } else if (a.rfind("--", 0) == 0) {
      throw input_error("unknown option '" + a + "'");
    } else {
      req.positional.push_back(a);
    }
  }
  return req;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline Quiver load_quiver(const std::string& path) {
  return parse_quiver(read_file(path));
}

inline Representation load_rep(const Quiver& q, const std::string& path) {
  return parse_representation(q, read_file(path));
}

inline DimVec parse_dims_arg(const Quiver& q, const std::string& text) {
  auto d = dim_parse(text);
  if (!d) throw input_error("bad class vector '" + text + "'");
  if (d->size() != q.vertex_count())
    throw input_error("class vector '" + text + "' has length " +
                      std::to_string(d->size()) + ", quiver has " +
                      std::to_string(q.vertex_count()) + " vertices");
  return *d;
}

inline Weight parse_weight_arg(const Quiver& q, const CliRequest& req) {
  if (!req.weight) throw input_error("this command needs --weight");
  auto w = weight_parse(*req.weight);
  if (!w) throw input_error("bad weight '" + *req.weight + "'");
  if (w->size() != q.vertex_count())
    throw input_error("weight '" + *req.weight + "' has length " +
                      std::to_string(w->size()) + ", quiver has " +
                      std::to_string(q.vertex_count()) + " vertices");
  return *w;
}

inline std::string row_csv(const Mat& m, size_t i) {
  std::string s;
  for (size_t j = 0; j < m.cols(); ++j) {
    if (j) s += ',';
    s += rat_to_string(m(i, j));
  }
  return s;
}

inline void print_matrix(std::ostream& out, OutputFormat f,
                         const std::string& name, const Mat& m) {
  if (f == OutputFormat::human) {
    out << name << ":\n" << m.to_string();
  } else {
    for (size_t i = 0; i < m.rows(); ++i)
      out << name << "." << i << "=" << row_csv(m, i) << "\n";
  }
}

inline void print_representation(std::ostream& out, OutputFormat f,
                                 const Quiver& q, const Representation& m) {
  if (f == OutputFormat::human) {
    out << format_representation(q, m);
    return;
  }
  out << "dims=" << dim_to_string(m.dim_vector()) << "\n";
  for (const Arrow& a : q.arrows()) {
    const Mat& mat = arrow_map(q, m, a);
    for (size_t i = 0; i < mat.rows(); ++i)
      out << "map." << a.name << "." << i << "=" << row_csv(mat, i) << "\n";
  }
}

inline int cmd_cartan(const CliRequest& req, std::ostream& out) {
  if (req.positional.size() != 2) throw input_error("cartan needs a quiver file");
  Quiver q = load_quiver(req.positional[1]);
  if (req.format == OutputFormat::records)
    out << "n=" << q.vertex_count() << "\n";
  print_matrix(out, req.format, "cartan", cartan_matrix(q));
  return 0;
}

inline int cmd_coxeter(const CliRequest& req, std::ostream& out) {
  if (req.positional.size() != 2)
    throw input_error("coxeter needs a quiver file");
  Quiver q = load_quiver(req.positional[1]);
  CoxeterData cd = coxeter(q);
  if (!(cd.phi_right == cd.psi))
    throw identity_violation("PS-DUAL",
                             "right twist matrix differs from the inverse "
                             "transpose of the twist");
  if (req.format == OutputFormat::records)
    out << "n=" << q.vertex_count() << "\n";
  print_matrix(out, req.format, "cartan", cd.cartan);
  print_matrix(out, req.format, "phi", cd.phi);
  print_matrix(out, req.format, "psi", cd.psi);
  print_matrix(out, req.format, "phi_right", cd.phi_right);
  auto order = matrix_order(cd.phi, 256);
  std::string ord = order ? std::to_string(*order) : std::string("none");
  if (req.format == OutputFormat::human) {
    out << "phi_right equals psi: yes\n";
    out << "order of phi: " << ord << "\n";
  } else {
    out << "phi_right_equals_psi=true\n";
    out << "order=" << ord << "\n";
  }
  return 0;
}

inline int cmd_roots(const CliRequest& req, std::ostream& out) {
  if (req.positional.size() != 2) throw input_error("roots needs a quiver file");
  Quiver q = load_quiver(req.positional[1]);
  std::vector<DimVec> roots = positive_roots(q);
  if (req.format == OutputFormat::human) {
    out << roots.size() << " positive roots\n";
    for (const DimVec& r : roots) out << dim_to_string(r) << "\n";
  } else {
    out << "count=" << roots.size() << "\n";
    for (size_t i = 0; i < roots.size(); ++i)
      out << "root." << i << "=" << dim_to_string(roots[i]) << "\n";
  }
  return 0;
}

inline int cmd_regular(const CliRequest& req, std::ostream& out) {
  if (req.positional.size() != 2)
    throw input_error("regular needs a quiver file");
  Quiver q = load_quiver(req.positional[1]);
  Weight v = parse_weight_arg(q, req);
  RegularityReport rep = is_regular(q, v);
  if (req.format == OutputFormat::human) {
    if (rep.regular)
      out << "regular\n";
    else
      out << "irregular on root " << dim_to_string(*rep.witness) << "\n";
  } else {
    out << "regular=" << (rep.regular ? "true" : "false") << "\n";
    if (!rep.regular) out << "witness=" << dim_to_string(*rep.witness) << "\n";
  }
  return 0;
}

inline int cmd_knit(const CliRequest& req, std::ostream& out) {
  if (req.positional.size() != 2) throw input_error("knit needs a quiver file");
  Quiver q = load_quiver(req.positional[1]);
  ARQuiver ar = knit(q);
  if (req.format == OutputFormat::human) {
    out << format_ar_quiver(ar);
    return 0;
  }
  out << "nodes=" << ar.nodes.size() << "\n";
  for (const ARNode& n : ar.nodes) {
    std::string flag = n.projective && n.injective ? "PI"
                       : n.projective             ? "P"
                       : n.injective              ? "I"
                                                  : "-";
    out << "node." << n.id << "=" << dim_to_string(n.dims) << ";" << flag
        << "\n";
  }
  for (size_t k = 0; k < ar.arrows.size(); ++k)
    out << "mesh." << k << "=" << ar.arrows[k].src << "," << ar.arrows[k].dst
        << "," << ar.arrows[k].mult << "\n";
  for (size_t k = 0; k < ar.tau_links.size(); ++k)
    out << "tau." << k << "=" << ar.tau_links[k].first << ","
        << ar.tau_links[k].second << "\n";
  return 0;
}

inline int cmd_hom_or_ext(const CliRequest& req, std::ostream& out, bool ext) {
  if (req.positional.size() != 4)
    throw input_error(std::string(ext ? "ext" : "hom") +
                      " needs a quiver file and two representation files");
  Quiver q = load_quiver(req.positional[1]);
  Representation m = load_rep(q, req.positional[2]);
  Representation n = load_rep(q, req.positional[3]);
  size_t d = ext ? ext1_dim(q, m, n) : hom_dim(q, m, n);
  if (req.format == OutputFormat::human)
    out << "dim " << (ext ? "Ext1" : "Hom") << "(M, N) = " << d << "\n";
  else
    out << (ext ? "ext1=" : "hom=") << d << "\n";
  return 0;
}

inline int cmd_tau(const CliRequest& req, std::ostream& out) {
  if (req.positional.size() != 3)
    throw input_error("tau needs a quiver file and a representation file");
  Quiver q = load_quiver(req.positional[1]);
  Representation m = load_rep(q, req.positional[2]);
  Representation t = tau(q, m);
  print_representation(out, req.format, q, t);
  return 0;
}

inline int cmd_euler(const CliRequest& req, std::ostream& out) {
  if (req.positional.size() != 4)
    throw input_error("euler needs a quiver file and two class vectors");
  Quiver q = load_quiver(req.positional[1]);
  DimVec d = parse_dims_arg(q, req.positional[2]);
  DimVec e = parse_dims_arg(q, req.positional[3]);
  Rat value = euler_form(q, d, e);
  if (req.format == OutputFormat::human)
    out << "euler form = " << rat_to_string(value) << "\n";
  else
    out << "euler=" << rat_to_string(value) << "\n";
  return 0;
}

inline int cmd_hrr(const CliRequest& req, std::ostream& out) {
  if (req.positional.size() != 4)
    throw input_error("hrr needs a quiver file and two representation files");
  Quiver q = load_quiver(req.positional[1]);
  Representation m = load_rep(q, req.positional[2]);
  Representation n = load_rep(q, req.positional[3]);
  Rat lhs = mukai_pairing(q, chern(m.dim_vector()), chern(n.dim_vector()));
  size_t h = hom_dim(q, n, m);
  size_t e = ext1_dim(q, n, m);
  Rat rhs = Rat(h) - Rat(e);
  Rat diff = lhs - rhs;
  if (req.format == OutputFormat::human) {
    out << "pairing of classes = " << rat_to_string(lhs) << "\n";
    out << "dim Hom(N, M) = " << h << "\n";
    out << "dim Ext1(N, M) = " << e << "\n";
    out << "hom - ext = " << rat_to_string(rhs) << "\n";
    out << "difference = " << rat_to_string(diff) << "\n";
  } else {
    out << "pairing=" << rat_to_string(lhs) << "\n";
    out << "hom=" << h << "\n";
    out << "ext1=" << e << "\n";
    out << "difference=" << rat_to_string(diff) << "\n";
  }
  if (diff != 0)
    throw identity_violation(
        "HRR", "pairing of classes is " + rat_to_string(lhs) +
                   " but hom - ext is " + rat_to_string(rhs));
  return 0;
}

inline int cmd_chern(const CliRequest& req, std::ostream& out) {
  if (req.positional.size() != 3)
    throw input_error("chern needs a quiver file and a representation file");
  Quiver q = load_quiver(req.positional[1]);
  Representation m = load_rep(q, req.positional[2]);
  Weight w = chern(m.dim_vector());
  if (req.format == OutputFormat::human)
    out << "class = " << weight_to_string(w) << "\n";
  else
    out << "chern=" << weight_to_string(w) << "\n";
  return 0;
}

inline int cmd_trace_check(const CliRequest& req, std::ostream& out) {
  if (req.positional.size() != 3)
    throw input_error(
        "trace-check needs a quiver file and a representation file");
  Quiver q = load_quiver(req.positional[1]);
  Representation m = load_rep(q, req.positional[2]);
  Weight v = parse_weight_arg(q, req);
  std::mt19937_64 rng(req.seed);
  TraceCheckReport rep = trace_formula_check(q, v, m, rng, req.samples);
  if (req.format == OutputFormat::human) {
    out << "trace identity holds on " << rep.samples_checked << " samples\n";
    if (!rep.note.empty()) out << "note: " << rep.note << "\n";
  } else {
    out << "degenerate=" << (rep.degenerate ? "true" : "false") << "\n";
    out << "samples=" << rep.samples_checked << "\n";
    if (!rep.note.empty()) out << "note=" << rep.note << "\n";
  }
  return 0;
}

inline int cmd_hh0(const CliRequest& req, std::ostream& out) {
  if (req.positional.size() != 2) throw input_error("hh0 needs a quiver file");
  Quiver q = load_quiver(req.positional[1]);
  HH0Result res = hh0(q);
  std::string basis;
  for (size_t i = 0; i < res.basis_labels.size(); ++i) {
    if (i) basis += ',';
    basis += res.basis_labels[i];
  }
  if (req.format == OutputFormat::human) {
    out << "dimension = " << res.dimension << "\n";
    out << "basis = " << basis << "\n";
  } else {
    out << "hh0=" << res.dimension << "\n";
    out << "basis=" << basis << "\n";
  }
  return 0;
}

inline int cmd_diagram(const CliRequest& req, std::ostream& out) {
  if (req.positional.size() < 2)
    throw input_error("diagram needs a subcommand: normalize, equiv, zigzag");
  const std::string& sub = req.positional[1];
  if (sub == "normalize") {
    if (req.positional.size() != 3)
      throw input_error("diagram normalize needs one expression");
    std::string result = normalize_text(req.positional[2]);
    out << (req.format == OutputFormat::records ? "normal=" : "") << result
        << "\n";
    return 0;
  }
  if (sub == "equiv") {
    if (req.positional.size() != 4)
      throw input_error("diagram equiv needs two expressions");
    bool eq = equivalent_text(req.positional[2], req.positional[3]);
    if (req.format == OutputFormat::human)
      out << (eq ? "equivalent" : "not equivalent") << "\n";
    else
      out << "equivalent=" << (eq ? "true" : "false") << "\n";
    return 0;
  }
  if (sub == "zigzag") {
    if (req.positional.size() != 3)
      throw input_error("diagram zigzag needs one morphism expression");
    std::string result = reduce_zigzag_text(req.positional[2]);
    out << (req.format == OutputFormat::records ? "reduced=" : "") << result
        << "\n";
    return 0;
  }
  throw input_error("unknown diagram subcommand '" + sub + "'");
}

inline int dispatch(const CliRequest& req, std::ostream& out,
                    std::ostream& err) {
  if (req.positional.empty()) {
    err << kUsage;
    return 2;
  }
  const std::string& cmd = req.positional[0];
  if (cmd == "cartan") return cmd_cartan(req, out);
  if (cmd == "coxeter") return cmd_coxeter(req, out);
  if (cmd == "roots") return cmd_roots(req, out);
  if (cmd == "regular") return cmd_regular(req, out);
  if (cmd == "knit") return cmd_knit(req, out);
  if (cmd == "hom") return cmd_hom_or_ext(req, out, false);
  if (cmd == "ext") return cmd_hom_or_ext(req, out, true);
  if (cmd == "tau") return cmd_tau(req, out);
  if (cmd == "euler") return cmd_euler(req, out);
  if (cmd == "hrr") return cmd_hrr(req, out);
  if (cmd == "chern") return cmd_chern(req, out);
  if (cmd == "trace-check") return cmd_trace_check(req, out);
  if (cmd == "hh0") return cmd_hh0(req, out);
  if (cmd == "diagram") return cmd_diagram(req, out);
  err << "unknown command '" << cmd << "'\n" << kUsage;
  return 2;
}

}  // namespace detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err) {
  try {
    detail::CliRequest req = detail::parse_cli_args(args);
    return detail::dispatch(req, out, err);
  } catch (const identity_violation& e) {
    err << "assertion failed " << e.what() << "\n";
    return 1;
  } catch (const input_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const unsupported_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace arq
