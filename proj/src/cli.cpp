#include "lvk/cli.hpp"

#include "lvk/blocks.hpp"
#include "lvk/errors.hpp"
#include "lvk/graphs.hpp"
#include "lvk/groupoid.hpp"
#include "lvk/io.hpp"
#include "lvk/numeric.hpp"
#include "lvk/schottky.hpp"
#include "lvk/virasoro.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <exception>
#include <functional>
#include <random>
#include <regex>
#include <sstream>
#include <thread>

namespace lvk::cli {

namespace {

using io::Json;
using virasoro::LiouvilleParams;
using virasoro::Weight;

struct Globals {
  bool json = false;
  unsigned threads = 1;
  std::uint64_t seed = 1;
  int precision = kDefaultDigits;
  bool no_timing = false;
};

struct Report {
  Json result;
  std::string text;
};

// Domain failure that already carries extra payload fields.
struct PayloadError {
  std::string kind;
  std::string message;
  Json details = Json::object();
  Json result = nullptr;
};

Json rationals_json(const std::vector<Rational>& values) {
  Json out = Json::array();
  for (const Rational& v : values) out.push_back(to_string(v));
  return out;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string decimal(const Real& x, int digits) {
  // Values below the working precision are rendering noise of exact zeros.
  const Real tiny = boost::multiprecision::pow(Real(10), -digits);
  return to_decimal(boost::multiprecision::abs(x) < tiny ? Real(0) : x, digits);
}

Json complex_json(const Complex& z, int digits) {
  return Json{{"re", decimal(z.re, digits)}, {"im", decimal(z.im, digits)}};
}

Real parse_real(const std::string& text) {
  if (text.find('/') != std::string::npos) return to_real(parse_rational(text));
  static const std::regex number(R"([-+]?(\d+\.?\d*|\.\d+)([eE][-+]?\d+)?)");
  if (!std::regex_match(text, number)) throw ParseError("not a decimal number: '" + text + "'");
  return Real(text);
}

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_rational(item));
  if (out.empty()) throw ParseError("empty list");
  return out;
}

// Sequentially numbered tasks run on `threads` workers; results and the first
// failure (by index) are reported in index order.
template <class T>
std::vector<T> parallel_map(std::size_t count, unsigned threads, const std::function<T(std::size_t)>& f) {
  std::vector<std::optional<T>> results(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        results[i] = f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  std::vector<T> out;
  for (std::size_t i = 0; i < count; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*results[i]));
  }
  return out;
}

std::string graph_text(const graphs::StableGraph& g) {
  std::ostringstream out;
  out << "vertices " << join(g.vertex_names(), ",") << "; edges";
  for (const graphs::Edge& e : g.edges())
    out << ' ' << g.vertex_names()[e.source] << '-' << g.vertex_names()[e.target];
  out << "; tails";
  for (const graphs::Tail& t : g.tails()) out << ' ' << t.number << '@' << g.vertex_names()[t.vertex];
  return out.str();
}

// ---- graphs -------------------------------------------------------------

Report graphs_enumerate(int genus, int tails) {
  const std::vector<graphs::StableGraph> found = graphs::enumerate_trivalent(genus, tails);
  Report r;
  r.result["count"] = found.size();
  r.result["graphs"] = Json::array();
  std::ostringstream text;
  text << found.size() << " trivalent classes of type (" << genus << "," << tails << ")\n";
  for (const graphs::StableGraph& g : found) {
    r.result["graphs"].push_back(io::graph_to_json(g));
    text << "  " << graph_text(g) << '\n';
  }
  r.text = text.str();
  return r;
}

Report graphs_validate(const std::string& path) {
  const graphs::StableGraph g = io::graph_from_json(io::read_json_file(path));
  if (auto bad = graphs::validate(g)) {
    PayloadError err{"invalid_graph", bad->message};
    err.details["invariant"] = bad->invariant;
    err.details["vertex"] = bad->vertex ? Json(g.vertex_names()[*bad->vertex]) : Json(nullptr);
    err.details["tail"] = bad->tail ? Json(*bad->tail) : Json(nullptr);
    throw err;
  }
  Report r;
  r.result["valid"] = true;
  r.result["genus"] = graphs::genus(g);
  r.result["trivalent"] = graphs::is_trivalent(g);
  const graphs::Rigidification tau = graphs::find_rigidification(g);
  Json labels = Json::object();
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    labels[g.vertex_names()[v]] = Json{{"0", graphs::branch_id(tau.labels[v][0])},
                                       {"1", graphs::branch_id(tau.labels[v][1])},
                                       {"inf", graphs::branch_id(tau.labels[v][2])}};
  }
  r.result["rigidification"] = labels;
  const std::string curve = graphs::degenerate_curve_description(g, tau).to_text(g);
  r.result["curve"] = curve;
  r.text = "valid stable graph, genus " + std::to_string(graphs::genus(g)) +
           (graphs::is_trivalent(g) ? ", trivalent\n" : "\n") + curve;
  return r;
}

// ---- schottky -----------------------------------------------------------

std::vector<graphs::OrientedEdge> random_path(const graphs::StableGraph& g, std::size_t start,
                                              std::optional<graphs::OrientedEdge> previous,
                                              std::size_t length, std::mt19937_64& rng) {
  std::vector<graphs::OrientedEdge> path;
  std::size_t at = start;
  for (std::size_t step = 0; step < length; ++step) {
    // Outgoing h are those with v_{-h} = at.
    std::vector<graphs::OrientedEdge> options;
    for (const graphs::Branch& b : g.branches_at(at)) {
      const auto* in = std::get_if<graphs::OrientedEdge>(&b);
      if (!in) continue;
      const graphs::OrientedEdge out = -*in;
      if (previous && out == -*previous) continue;
      options.push_back(out);
    }
    if (options.empty()) break;
    const graphs::OrientedEdge h = options[rng() % options.size()];
    path.push_back(h);
    previous = h;
    at = g.terminal_vertex(h);
  }
  return path;
}

Report schottky_verify(const std::string& path, std::optional<int> cutoff_opt, int samples,
                       const Globals& globals) {
  Json doc = io::read_json_file(path);
  if (!doc.is_object()) throw ParseError("Schottky input must be a JSON object");
  Json graph_part = Json::object();
  std::optional<Json> alpha_part;
  std::optional<int> cutoff = cutoff_opt;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (it.key() == "alpha") {
      alpha_part = it.value();
    } else if (it.key() == "cutoff") {
      if (!it.value().is_number_integer()) throw ParseError("key 'cutoff' must be an integer");
      if (!cutoff) cutoff = it.value().get<int>();
    } else {
      graph_part[it.key()] = it.value();
    }
  }
  if (!cutoff) throw ParseError("missing cutoff (key 'cutoff' or --cutoff)");
  if (*cutoff < 0) throw ParseError("cutoff must be non-negative");
  const graphs::StableGraph g = io::graph_from_json(graph_part);
  graphs::require_valid(g);
  if (g.tail_count() != 0) throw DomainError("graph_has_tails", "Schottky data needs a graph without tails");

  schottky::AlphaTable alpha;
  if (alpha_part) {
    if (!alpha_part->is_object()) throw ParseError("key 'alpha' must be an object");
    for (auto it = alpha_part->begin(); it != alpha_part->end(); ++it) {
      const auto branch = graphs::parse_branch_id(it.key());
      const auto* h = branch ? std::get_if<graphs::OrientedEdge>(&*branch) : nullptr;
      if (!h) throw ParseError("bad branch id in 'alpha': '" + it.key() + "'");
      if (!it.value().is_string()) throw ParseError("alpha value for '" + it.key() + "' must be a string");
      const std::string v = it.value().get<std::string>();
      alpha[*h] = v == "inf" ? schottky::AlphaValue{} : schottky::AlphaValue{parse_rational(v)};
    }
  } else {
    alpha = schottky::alpha_from_rigidification(g, graphs::find_rigidification(g));
  }
  const schottky::SchottkyData data(g, alpha, *cutoff);
  const std::vector<graphs::Branch> branches = g.all_branches();
  std::vector<graphs::OrientedEdge> oriented;
  for (const graphs::Branch& b : branches) oriented.push_back(std::get<graphs::OrientedEdge>(b));

  std::mt19937_64 rng(globals.seed);


  bool cross_ok = true;
  for (int s = 0; s < samples; ++s) {
    const graphs::OrientedEdge h = oriented[rng() % oriented.size()];
    Rational z;
    do {
      z = Rational(static_cast<long>(rng() % 201) - 100, static_cast<long>(rng() % 20) + 1);
    } while ((data.alpha(h) && z == *data.alpha(h)) || (data.alpha(-h) && z == *data.alpha(-h)));
    cross_ok = cross_ok && schottky::verify_cross_ratio(data, h, z);
  }

  bool det_ok = true;
  bool inverse_ok = true;
  bool fixed_ok = true;
  const schottky::ProjectiveMatrix id = schottky::ProjectiveMatrix::identity(data.ring());
  for (const graphs::OrientedEdge& h : oriented) {
    const schottky::ProjectiveMatrix m = schottky::phi(data, h);
    const schottky::TruncatedSeries q = data.q(h.edge);
    if (data.alpha(h) && data.alpha(-h)) {
      const Rational diff = *data.alpha(h) - *data.alpha(-h);
      det_ok = det_ok && m.determinant() == (diff * diff) * q;
      try {
        schottky::fixed_point_multiplier(data, h);
      } catch (const DomainError&) {
        fixed_ok = false;
      }
    } else {
      det_ok = det_ok && m.determinant() == q;
    }
    inverse_ok = inverse_ok && schottky::projectively_equal(schottky::inverse_via_negation(data, h) * m, id);
  }

  bool anti_ok = true;
  for (int s = 0; s < samples; ++s) {
    const std::size_t start = rng() % g.vertex_count();
    const auto first = random_path(g, start, std::nullopt, 1 + rng() % 3, rng);
    const auto second = random_path(g, g.terminal_vertex(first.back()), first.back(), 1 + rng() % 3, rng);
    std::vector<graphs::OrientedEdge> joined = first;
    joined.insert(joined.end(), second.begin(), second.end());
    const schottky::ProjectiveMatrix lhs = schottky::path_matrix(data, joined);
    const schottky::ProjectiveMatrix rhs = schottky::path_matrix(data, second) * schottky::path_matrix(data, first);
    anti_ok = anti_ok && lhs.a == rhs.a && lhs.b == rhs.b && lhs.c == rhs.c && lhs.d == rhs.d;
  }

  const std::size_t generators = schottky::schottky_generators(data, 0).size();
  auto verdict = [](bool ok) { return ok ? "pass" : "fail"; };
  Report r;
  r.result["relation"] = Json{{"anti_homomorphism", verdict(anti_ok)},
                              {"cross_ratio", verdict(cross_ok)},
                              {"determinant", verdict(det_ok)},
                              {"fixed_points", verdict(fixed_ok)},
                              {"inverse", verdict(inverse_ok)}};
  r.result["samples"] = samples;
  r.result["cutoff"] = *cutoff;
  r.result["generators"] = generators;
  Json alpha_json = Json::object();
  for (const auto& [h, v] : data.alpha_table()) alpha_json[graphs::branch_id(h)] = v ? to_string(*v) : "inf";
  r.result["alpha"] = alpha_json;

  std::ostringstream text;
  for (const auto& [name, v] : r.result["relation"].items()) text << name << ": " << v.get<std::string>() << '\n';
  text << samples << " samples, cutoff " << *cutoff << ", " << generators << " generators\n";
  r.text = text.str();
  if (!(cross_ok && det_ok && inverse_ok && anti_ok && fixed_ok)) {
    throw PayloadError{"relation_failed", "a Schottky relation failed", Json::object(), r.result};
  }
  return r;
}

// ---- virasoro -----------------------------------------------------------

Report gram(int level, const Rational& b, const Rational& delta, const Globals& globals) {
  if (level < 0) throw ParseError("level must be non-negative");
  const LiouvilleParams params = LiouvilleParams::from_b(b);
  const linalg::Matrix g =
      virasoro::gram_matrix(params, Weight::from_delta(delta), level, globals.threads);
  Report r;
  Json labels = Json::array();
  for (const virasoro::Partition& p : virasoro::partitions(level)) labels.push_back(virasoro::partition_label(p));
  Json rows = Json::array();
  std::ostringstream text;
  text << "level " << level << ", c = " << to_string(params.c) << ", Delta = " << to_string(delta) << '\n';
  for (std::size_t i = 0; i < g.rows(); ++i) {
    Json row = Json::array();
    std::vector<std::string> cells;
    for (std::size_t j = 0; j < g.cols(); ++j) {
      row.push_back(to_string(g(i, j)));
      cells.push_back(to_string(g(i, j)));
    }
    rows.push_back(row);
    text << "  [" << labels[i].get<std::string>() << "] " << join(cells, " ") << '\n';
  }
  const Rational det = linalg::determinant(g);
  r.result["matrix"] = rows;
  r.result["partitions"] = labels;
  r.result["determinant"] = to_string(det);
  r.result["central_charge"] = to_string(params.c);
  text << "det = " << to_string(det) << '\n';
  r.text = text.str();
  return r;
}

Report character(const Rational& delta, int order) {
  if (order < 0) throw ParseError("order must be non-negative");
  const virasoro::BlockSeries s = virasoro::character(Weight::from_delta(delta), order);
  Report r;
  r.result["delta"] = to_string(s.delta);
  r.result["coefficients"] = rationals_json(s.coefficients);
  std::vector<std::string> cells;
  for (const Rational& c : s.coefficients) cells.push_back(to_string(c));
  r.text = "q^" + to_string(delta) + " * [" + join(cells, ", ") + "]\n";
  return r;
}

Report weight(const Rational& b, const std::optional<std::string>& length,
              const std::optional<Rational>& momentum, const Globals& globals) {
  const LiouvilleParams params = LiouvilleParams::from_b(b);
  Report r;
  r.result["c"] = to_string(params.c);
  r.result["Q"] = to_string(params.Q);
  if (momentum) {
    const Weight w = virasoro::weight_from_momentum(params, *momentum);
    r.result["momentum"] = to_string(*momentum);
    r.result["delta"] = to_string(w.delta);
    r.result["alpha"] = Json{{"re", to_string(params.Q / 2)}, {"im", to_string(*momentum)}};
    r.text = "Delta = " + to_string(w.delta) + " (exact)\n";
    return r;
  }
  const virasoro::NumericWeight w = virasoro::weight_from_length(params, parse_real(*length));
  const int d = globals.precision;
  r.result["momentum"] = decimal(w.momentum, d);
  r.result["delta"] = decimal(w.delta, d);
  r.result["alpha"] = Json{{"re", decimal(w.alpha_re, d)}, {"im", decimal(w.alpha_im, d)}};
  r.result["digits"] = d;
  r.text = "r = " + decimal(w.momentum, d) + "\nDelta = " + decimal(w.delta, d) + "\n";
  return r;
}

// ---- blocks -------------------------------------------------------------

Json series_json(const virasoro::BlockSeries& s) {
  return Json{{"delta_beta", to_string(s.delta)}, {"coefficients", rationals_json(s.coefficients)}};
}

std::string series_text(const virasoro::BlockSeries& s) {
  std::vector<std::string> cells;
  for (const Rational& c : s.coefficients) cells.push_back(to_string(c));
  return "Delta_beta = " + to_string(s.delta) + ": [" + join(cells, ", ") + "]\n";
}

virasoro::BlockSeries four_point(const LiouvilleParams& params, const std::array<Rational, 4>& d,
                                 const Rational& dbeta, int order) {
  const Weight beta = Weight::from_delta(dbeta);
  const blocks::ThreePointBlock left = blocks::solve_three_point(params, {d[0], d[1], dbeta}, order);
  const blocks::ThreePointBlock right = blocks::solve_three_point(params, {dbeta, d[2], d[3]}, order);
  return blocks::glue_four_point(params, left, right, beta, order);
}

Report block4(const Rational& b, const std::array<Rational, 4>& d, const std::optional<Rational>& dbeta,
              const std::optional<std::string>& grid, int order, const Globals& globals) {
  if (order < 0) throw ParseError("order must be non-negative");
  const LiouvilleParams params = LiouvilleParams::from_b(b);
  Report r;
  if (!grid) {
    const virasoro::BlockSeries s = four_point(params, d, *dbeta, order);
    r.result = series_json(s);
    r.text = series_text(s);
    return r;
  }
  const std::vector<Rational> betas = parse_rational_list(*grid);
  const std::vector<virasoro::BlockSeries> all = parallel_map<virasoro::BlockSeries>(
      betas.size(), globals.threads, [&](std::size_t i) { return four_point(params, d, betas[i], order); });
  r.result["grid"] = Json::array();
  for (const virasoro::BlockSeries& s : all) {
    r.result["grid"].push_back(series_json(s));
    r.text += series_text(s);
  }
  return r;
}

Report torus1(const Rational& b, const Rational& dext, const Rational& dbeta, int order, bool diagnostic) {
  if (order < 0) throw ParseError("order must be non-negative");
  const LiouvilleParams params = LiouvilleParams::from_b(b);
  const Weight beta = Weight::from_delta(dbeta);
  virasoro::BlockSeries s;
  if (diagnostic) {
    s = blocks::glue_torus_diagnostic(params, beta, order);
  } else {
    const blocks::ThreePointBlock block = blocks::solve_three_point(params, {dbeta, dext, dbeta}, 2 * order);
    s = blocks::glue_torus_one_point(params, block, beta, order);
  }
  Report r;
  r.result = series_json(s);
  r.result["diagnostic"] = diagnostic;
  r.text = series_text(s);
  return r;
}

virasoro::BlockSeries series_from_json(const Json& doc) {
  const Json& j = doc.is_object() && doc.contains("result") ? doc["result"] : doc;
  if (!j.is_object() || !j.contains("delta_beta") || !j.contains("coefficients")) {
    throw ParseError("coefficient file needs keys 'delta_beta' and 'coefficients'");
  }
  virasoro::BlockSeries s{io::rational_from_json(j["delta_beta"], "delta_beta"), {}};
  if (!j["coefficients"].is_array()) throw ParseError("key 'coefficients' must be a list");
  for (const Json& c : j["coefficients"]) s.coefficients.push_back(io::rational_from_json(c, "coefficients"));
  return s;
}

Report wave(const std::string& coeffs, const std::string& q_text, long winding, const Globals& globals) {
  const virasoro::BlockSeries s = series_from_json(io::read_json_file(coeffs));
  const auto comma = q_text.find(',');
  if (comma == std::string::npos) throw ParseError("--q expects re,im");
  const Complex q(parse_real(q_text.substr(0, comma)), parse_real(q_text.substr(comma + 1)));
  const Complex value = blocks::wave_function_eval(s, q, winding);
  const int d = globals.precision;
  Report r;
  r.result["value"] = complex_json(value, d);
  r.result["abs"] = decimal(abs(value), d);
  r.result["digits"] = d;
  r.text = decimal(value.re, d) + " + " + decimal(value.im, d) + " i\n";
  return r;
}

// ---- groupoid -----------------------------------------------------------

Report moves(int genus, int tails) {
  const groupoid::MoveGraph m = groupoid::move_graph(genus, tails);
  Report r;
  r.result["nodes"] = Json::array();
  for (const graphs::StableGraph& g : m.nodes) r.result["nodes"].push_back(io::graph_to_json(g));
  r.result["edges"] = Json::array();
  for (const auto& [a, b] : m.edges) r.result["edges"].push_back(Json::array({a, b}));
  r.result["connected"] = m.connected;
  std::ostringstream text;
  text << m.nodes.size() << " classes, " << m.edges.size() << " fusing transitions, "
       << (m.connected ? "connected" : "not connected") << '\n';
  for (const auto& [a, b] : m.edges) text << "  " << a << " -- " << b << '\n';
  r.text = text.str();
  return r;
}

std::size_t edge_from_json(const Json& j, const std::string& what) {
  if (j.is_number_unsigned()) return j.get<std::size_t>();
  if (j.is_string()) {
    const auto b = graphs::parse_branch_id(j.get<std::string>());
    const auto* h = b ? std::get_if<graphs::OrientedEdge>(&*b) : nullptr;
    if (h && h->positive) return h->edge;
  }
  throw ParseError("bad edge in " + what + ": " + j.dump());
}

groupoid::Move move_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("each move must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() != "move" && it.key() != "edge" && it.key() != "selector") {
      throw ParseError("unknown key in move: '" + it.key() + "'");
    }
  }
  if (!j.contains("move") || !j["move"].is_string() || !j.contains("edge")) {
    throw ParseError("a move needs keys 'move' and 'edge'");
  }
  const std::string kind = j["move"].get<std::string>();
  const std::size_t edge = edge_from_json(j["edge"], "move");
  if (kind == "fusing") {
    const std::string sel = j.value("selector", "left");
    if (sel != "left" && sel != "right") throw ParseError("selector must be 'left' or 'right'");
    return groupoid::Fusing{edge, sel == "left" ? groupoid::Selector::Left : groupoid::Selector::Right};
  }
  if (j.contains("selector")) throw ParseError("key 'selector' only applies to fusing moves");
  if (kind == "simple") return groupoid::Simple{edge};
  if (kind == "half_twist") return groupoid::HalfTwist{edge};
  throw ParseError("unknown move '" + kind + "'");
}

Report phase(const std::string& word_path, const std::string& beta_path, const Globals& globals) {
  const Json word_doc = io::read_json_file(word_path);
  const Json* moves_json = &word_doc;
  std::optional<graphs::StableGraph> start;
  if (word_doc.is_object()) {
    for (auto it = word_doc.begin(); it != word_doc.end(); ++it) {
      if (it.key() != "moves" && it.key() != "graph") throw ParseError("unknown key in word file: '" + it.key() + "'");
    }
    if (!word_doc.contains("moves")) throw ParseError("word file needs key 'moves'");
    moves_json = &word_doc["moves"];
    if (word_doc.contains("graph")) start = io::graph_from_json(word_doc["graph"]);
  }
  if (!moves_json->is_array()) throw ParseError("key 'moves' must be a list");
  groupoid::MoveWord word;
  for (const Json& m : *moves_json) word.push_back(move_from_json(m));

  const Json beta_doc = io::read_json_file(beta_path);
  if (!beta_doc.is_object()) throw ParseError("beta file must map edge ids to weights");
  groupoid::BetaAssignment beta;
  for (auto it = beta_doc.begin(); it != beta_doc.end(); ++it) {
    beta[edge_from_json(Json(it.key()), "beta")] = Weight::from_delta(io::rational_from_json(it.value(), it.key()));
  }

  if (start) groupoid::apply_word(*start, word);
  const groupoid::WordPhase p = groupoid::word_phase(word, beta);
  const int d = globals.precision;
  Report r;
  std::vector<std::string> labels;
  for (const groupoid::Move& m : word) labels.push_back(groupoid::move_label(m));
  r.result["word"] = labels;
  r.result["exponent"] = to_string(p.exponent);
  r.result["value"] = complex_json(p.value, d);
  r.result["digits"] = d;
  r.text = "exp(pi i * " + to_string(p.exponent) + ") = " + decimal(p.value.re, d) + " + " +
           decimal(p.value.im, d) + " i\n";
  return r;
}

// ---- dispatch -----------------------------------------------------------

Json echo_inputs(const CLI::App* sub) {
  Json out = Json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->count() == 0 || opt->get_lnames().empty()) continue;
    const std::string& name = opt->get_lnames().front();
    if (name == "help") continue;
    if (opt->get_type_size() == 0) {
      out[name] = true;
    } else {
      out[name] = join(opt->results(), ",");
    }
  }
  return out;
}

}  // namespace

RunResult run(const std::vector<std::string>& args) {
  CLI::App app{"Exact Virasoro, Schottky and stable-graph computations", "lvk"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  g.precision = default_digits();
  app.add_flag("--json", g.json, "Emit a JSON report");
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::Range(1u, 256u));
  app.add_option("--seed", g.seed, "Seed for randomized checks");
  app.add_option("--precision", g.precision, "Significant digits in numeric mode");
  app.add_flag("--no-timing", g.no_timing, "Report timing_ms as 0");

  std::string command;
  std::function<Report()> action;
  CLI::App* active = nullptr;
  auto bind = [&](CLI::App* sub, std::string name, std::function<Report()> f) {
    sub->callback([&, sub, name, f] {
      command = name;
      action = f;
      active = sub;
    });
  };

  int genus = 0, tails = 0;
  std::string graph_path;
  CLI::App* graphs_cmd = app.add_subcommand("graphs", "Stable graph combinatorics");
  graphs_cmd->require_subcommand(1);
  CLI::App* enumerate = graphs_cmd->add_subcommand("enumerate", "Trivalent classes of type (g, n)");
  enumerate->add_option("--genus", genus)->required();
  enumerate->add_option("--tails", tails)->required();
  bind(enumerate, "graphs enumerate", [&] { return graphs_enumerate(genus, tails); });
  CLI::App* validate = graphs_cmd->add_subcommand("validate", "Check a graph file");
  validate->add_option("--graph", graph_path)->required();
  bind(validate, "graphs validate", [&] { return graphs_validate(graph_path); });

  std::optional<int> cutoff;
  int samples = 20;
  CLI::App* schottky_cmd = app.add_subcommand("schottky", "Universal Schottky generators");
  schottky_cmd->require_subcommand(1);
  CLI::App* verify = schottky_cmd->add_subcommand("verify", "Check the defining identities");
  verify->add_option("--graph", graph_path, "Graph JSON with optional 'alpha' and 'cutoff'")->required();
  verify->add_option("--cutoff", cutoff);
  verify->add_option("--samples", samples)->check(CLI::Range(1, 100000));
  bind(verify, "schottky verify", [&] { return schottky_verify(graph_path, cutoff, samples, g); });

  std::string b = "1", delta, dext, dbeta_text, length, momentum, grid, d1, d2, d3, d4, coeffs, q, word, beta;
  int level = 0, order = 0;
  long winding = 0;
  bool diagnostic = false;

  CLI::App* gram_cmd = app.add_subcommand("gram", "Exact Gram matrix of a Verma module level");
  gram_cmd->add_option("--level", level)->required();
  gram_cmd->add_option("--b", b);
  gram_cmd->add_option("--delta", delta)->required();
  bind(gram_cmd, "gram", [&] { return gram(level, parse_rational(b), parse_rational(delta), g); });

  CLI::App* char_cmd = app.add_subcommand("char", "Verma character");
  char_cmd->add_option("--delta", delta)->required();
  char_cmd->add_option("--order", order)->required();
  bind(char_cmd, "char", [&] { return character(parse_rational(delta), order); });

  CLI::App* weight_cmd = app.add_subcommand("weight", "Weight from a geodesic length or a momentum");
  weight_cmd->add_option("--b", b);
  CLI::Option* length_opt = weight_cmd->add_option("--length", length);
  CLI::Option* momentum_opt = weight_cmd->add_option("--momentum", momentum);
  length_opt->excludes(momentum_opt);
  bind(weight_cmd, "weight", [&] {
    if (!length_opt->count() && !momentum_opt->count()) throw ParseError("one of --length, --momentum is required");
    return weight(parse_rational(b), length_opt->count() ? std::optional(length) : std::nullopt,
                  momentum_opt->count() ? std::optional(parse_rational(momentum)) : std::nullopt, g);
  });

  CLI::App* block4_cmd = app.add_subcommand("block4", "Four-point sphere block as a q-series");
  block4_cmd->add_option("--b", b);
  block4_cmd->add_option("--d1", d1)->required();
  block4_cmd->add_option("--d2", d2)->required();
  block4_cmd->add_option("--d3", d3)->required();
  block4_cmd->add_option("--d4", d4)->required();
  CLI::Option* dbeta_opt = block4_cmd->add_option("--dbeta", dbeta_text);
  CLI::Option* grid_opt = block4_cmd->add_option("--dbeta-grid", grid, "Comma-separated list of Delta_beta");
  dbeta_opt->excludes(grid_opt);
  block4_cmd->add_option("--order", order)->required();
  bind(block4_cmd, "block4", [&] {
    if (!dbeta_opt->count() && !grid_opt->count()) throw ParseError("one of --dbeta, --dbeta-grid is required");
    return block4(parse_rational(b),
                  {parse_rational(d1), parse_rational(d2), parse_rational(d3), parse_rational(d4)},
                  dbeta_opt->count() ? std::optional(parse_rational(dbeta_text)) : std::nullopt,
                  grid_opt->count() ? std::optional(grid) : std::nullopt, order, g);
  });

  CLI::App* torus_cmd = app.add_subcommand("torus1", "One-point torus block as a q-series");
  torus_cmd->add_option("--b", b);
  torus_cmd->add_option("--dext", dext);
  torus_cmd->add_option("--dbeta", dbeta_text)->required();
  torus_cmd->add_option("--order", order)->required();
  torus_cmd->add_flag("--diagnostic", diagnostic, "Replace the three-point block by the Shapovalov pairing");
  bind(torus_cmd, "torus1", [&] {
    if (!diagnostic && dext.empty()) throw ParseError("--dext is required unless --diagnostic is given");
    return torus1(parse_rational(b), diagnostic && dext.empty() ? Rational(0) : parse_rational(dext),
                  parse_rational(dbeta_text), order, diagnostic);
  });

  CLI::App* wave_cmd = app.add_subcommand("wave", "Evaluate a block series with its q^Delta prefactor");
  wave_cmd->add_option("--coeffs", coeffs)->required();
  wave_cmd->add_option("--q", q, "re,im")->required();
  wave_cmd->add_option("--winding", winding);
  bind(wave_cmd, "wave", [&] { return wave(coeffs, q, winding, g); });

  CLI::App* moves_cmd = app.add_subcommand("moves", "Fusing-move graph on trivalent classes");
  moves_cmd->add_option("--genus", genus)->required();
  moves_cmd->add_option("--tails", tails)->required();
  bind(moves_cmd, "moves", [&] { return moves(genus, tails); });

  CLI::App* phase_cmd = app.add_subcommand("phase", "Phase of a move word");
  phase_cmd->add_option("--word", word)->required();
  phase_cmd->add_option("--beta", beta)->required();
  bind(phase_cmd, "phase", [&] { return phase(word, beta, g); });

  RunResult out;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out.out = app.help();
    return out;
  } catch (const CLI::ParseError& e) {
    out.status = e.get_exit_code() == 0 ? 0 : 2;
    out.err = std::string("error: ") + e.what() + "\n";
    return out;
  }
  // Nested help requests leave no action behind.
  if (!action) {
    out.out = app.help();
    return out;
  }

  Json doc;
  doc["command"] = command;
  doc["inputs"] = echo_inputs(active);
  if (g.precision < kMinimumDigits) {
    out.status = 2;
    doc["error"] = Json{{"kind", "parse_error"}, {"message", "--precision must be at least 15"}};
    out.err = "error: --precision must be at least 15\n";
  } else {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const PrecisionScope scope(g.precision);
      Report r = action();
      doc["result"] = std::move(r.result);
      out.out = std::move(r.text);
    } catch (const PayloadError& e) {
      out.status = 1;
      Json err = e.details;
      err["kind"] = e.kind;
      err["message"] = e.message;
      doc["error"] = err;
      if (!e.result.is_null()) doc["result"] = e.result;
    } catch (const ParseError& e) {
      out.status = 2;
      doc["error"] = Json{{"kind", "parse_error"}, {"message", e.what()}};
    } catch (const DomainError& e) {
      out.status = 1;
      doc["error"] = Json{{"kind", e.kind()}, {"message", e.what()}};
    } catch (const ContractViolation& e) {
      out.status = 1;
      doc["error"] = Json{{"kind", "contract_violation"}, {"message", e.what()}};
    }
    const auto t1 = std::chrono::steady_clock::now();
    doc["timing_ms"] =
        g.no_timing ? 0 : std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    if (out.status != 0) {
      out.err = "error (" + doc["error"]["kind"].get<std::string>() + "): " +
                doc["error"]["message"].get<std::string>() + "\n";
    }
  }
  if (g.json) {
    out.out = doc.dump(2) + "\n";
    out.err.clear();
  } else if (out.status != 0) {
    out.out.clear();
  }
  return out;
}

}  // namespace lvk::cli
