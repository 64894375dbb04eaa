#include <algorithm>
#include <bit>
#include <functional>
#include <iomanip>
#include <numeric>
#include <random>
#include <sstream>

#include "cache.hpp"
#include "commands.hpp"
#include "gad/parallel.hpp"
#include "gad/weight_an.hpp"

namespace gad::cli {
namespace {

constexpr std::size_t kMaxN = 6;

void check_n(std::size_t n) {
  if (n > kMaxN) throw InputError("--n must be between 0 and " + std::to_string(kMaxN));
}

Weight weight_arg(const AnArgs& a) {
  if (a.weight.empty()) throw InputError("--weight is required");
  Weight w = parse_weight(a.weight);
  if (w.size() != a.n + 1)
    throw InputError("weight " + to_string(w) + " needs " + std::to_string(a.n + 1) + " entries for n = " +
                     std::to_string(a.n));
  return w;
}

Cache make_cache(const Options& opt) {
  return Cache(opt.cache_dir.empty() ? Cache::default_dir() : opt.cache_dir, !opt.no_cache);
}

std::string cache_key(std::size_t n, const Weight& w) {
  std::string key = "an1-n" + std::to_string(n) + "-w";
  for (std::size_t i = 0; i < w.size(); ++i) key += (i ? "_" : "") + std::to_string(w[i]);
  return key;
}

Json weight_row(const WeightAtlas& atlas, const Weight& w) {
  const WeightComponent c = weight_subgraph(atlas, w);
  Json row;
  row["weight"] = to_string(w);
  row["size"] = c.vertices.size();
  row["rank_formula"] = rank_closed_form(w);
  row["rank_counted"] = counted_rank(c);
  row["homology"] = homology_to_json(homology(c.chain));
  return row;
}

std::vector<Json> weight_rows(const WeightAtlas& atlas, const std::vector<Weight>& ws, const Options& opt) {
  const Cache cache = make_cache(opt);
  std::vector<Json> rows(ws.size());
  parallel_for(ws.size(), opt.jobs, [&](std::size_t i) {
    const std::string key = cache_key(atlas.n(), ws[i]);
    if (auto hit = cache.load(key)) {
      rows[i] = std::move(*hit);
      return;
    }
    rows[i] = weight_row(atlas, ws[i]);
    cache.store(key, rows[i]);
  });
  return rows;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string word_text(const std::vector<std::size_t>& word) {
  if (word.empty()) return "identity";
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) out += (i ? " " : "") + std::string("s") + std::to_string(word[i]);
  return out;
}

std::vector<std::size_t> parse_perm(const std::string& text) {
  std::vector<std::size_t> perm;
  for (std::int64_t x : parse_weight(text)) {
    if (x < 0) throw InputError("--perm entries must be non-negative");
    perm.push_back(static_cast<std::size_t>(x));
  }
  return perm;
}

// Every tuple of length n+1 with entries in 0..n and the given total.
void for_each_tuple(std::size_t n, std::int64_t total, const std::function<void(const Weight&)>& fn) {
  Weight w(n + 1, 0);
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t left) {
    if (i == n + 1) {
      if (left == 0) fn(w);
      return;
    }
    for (std::int64_t x = 0; x <= static_cast<std::int64_t>(n) && x <= left; ++x) {
      w[i] = x;
      rec(i + 1, left - x);
    }
  };
  rec(0, total);
}

void verify_realizable(const WeightAtlas& atlas, Report& r) {
  const std::size_t n = atlas.n();
  std::size_t tuples = 0;
  std::vector<std::string> bad;
  for_each_tuple(n, static_cast<std::int64_t>(tri_size(n)), [&](const Weight& w) {
    ++tuples;
    if (is_admissible_weight(w) == atlas.matrices(w).empty()) bad.push_back(to_string(w));
  });
  for (const auto& [w, ms] : atlas.buckets())
    if (!is_admissible_weight(w)) bad.push_back(to_string(w) + " (realized)");
  r.line("realizable: " + std::to_string(tuples) + " tuples checked");
  r.data()["realizable"] = {{"tuples", tuples}, {"mismatches", bad}};
  r.check("weights are realized exactly when admissible", bad.empty() ? Verdict::pass : Verdict::fail,
          "realizable weights", bad.empty() ? "" : bad.front());
}

void verify_connected(const WeightAtlas& atlas, const std::vector<Weight>& omega, unsigned jobs, Report& r) {
  const std::size_t n = atlas.n();
  std::vector<std::string> failures(omega.size());
  std::vector<std::size_t> witnesses(omega.size(), 0);
  parallel_for(omega.size(), jobs, [&](std::size_t i) {
    const Weight& w = omega[i];
    try {
      weight_subgraph(atlas, w);
      for (std::size_t s = 0; s <= n; ++s)
        for (std::size_t t = s + 1; t <= n; ++t)
          if (is_admissible_weight(shifted(w, s, t))) {
            const auto e = edge_witness(atlas, w, s, t);
            if (e.matrix.get(s, t) || weight_of(e.matrix) != w)
              throw InvariantViolation("connected weight components",
                                       "bad edge witness for " + to_string(w) + " at " + std::to_string(s) + "," +
                                           std::to_string(t));
            ++witnesses[i];
          }
    } catch (const InvariantViolation& e) {
      failures[i] = e.what();
    }
  });
  std::vector<std::string> bad;
  for (auto& f : failures)
    if (!f.empty()) bad.push_back(f);
  const std::size_t total = std::accumulate(witnesses.begin(), witnesses.end(), std::size_t{0});
  r.line("connected: " + std::to_string(omega.size()) + " components, " + std::to_string(total) + " edge witnesses");
  r.data()["connected"] = {{"components", omega.size()}, {"edge_witnesses", total}, {"failures", bad}};
  r.check("weight components are connected", bad.empty() ? Verdict::pass : Verdict::fail,
          "connected weight components", bad.empty() ? "" : bad.front());
}

void verify_product(const WeightAtlas& atlas, const std::vector<Weight>& omega, unsigned jobs, Report& r) {
  std::vector<std::optional<ProductIsoReport>> reports(omega.size());
  parallel_for(omega.size(), jobs, [&](std::size_t i) {
    if (is_reducible(omega[i])) reports[i] = verify_product_iso(atlas, omega[i]);
  });
  std::size_t reducible = 0;
  std::vector<std::string> bad;
  for (const auto& rep : reports) {
    if (!rep) continue;
    ++reducible;
    if (rep->verdict == Verdict::fail)
      bad.push_back(rep->details.empty() ? to_string(rep->factors.first) : rep->details.front());
  }
  r.line("product: " + std::to_string(reducible) + " reducible weights");
  r.data()["product"] = {{"reducible", reducible}, {"failures", bad}};
  r.check("reducible components are products", bad.empty() ? Verdict::pass : Verdict::fail,
          "product weight components", bad.empty() ? "" : bad.front());
}

void verify_rank(const WeightAtlas& atlas, const std::vector<Weight>& omega, unsigned jobs, Report& r) {
  const std::size_t n = atlas.n();
  std::vector<std::int64_t> counted(omega.size());
  parallel_for(omega.size(), jobs,
               [&](std::size_t i) { counted[i] = counted_rank(weight_subgraph(atlas, omega[i])); });
  std::map<Weight, std::int64_t> rank;
  std::vector<std::string> bad;
  for (std::size_t i = 0; i < omega.size(); ++i) {
    rank[omega[i]] = counted[i];
    if (rank_closed_form(omega[i]) != counted[i])
      bad.push_back(to_string(omega[i]) + ": formula " + std::to_string(rank_closed_form(omega[i])) + ", counted " +
                    std::to_string(counted[i]));
  }
  std::size_t shifts = 0;
  for (const Weight& w : omega)
    for (std::size_t s = 0; s <= n; ++s)
      for (std::size_t t = 0; t <= n; ++t) {
        if (s == t) continue;
        const Weight v = shifted(w, s, t);
        if (!is_admissible_weight(v)) continue;
        ++shifts;
        const std::int64_t expected = w[t] - w[s] - 1;
        if (rank.at(v) - rank.at(w) != expected || rank_closed_form(v) - rank_closed_form(w) != expected)
          bad.push_back(to_string(w) + " -> " + to_string(v) + ": expected change " + std::to_string(expected));
      }
  r.line("rank: " + std::to_string(omega.size()) + " weights, " + std::to_string(shifts) + " shifts");
  r.data()["rank"] = {{"weights", omega.size()}, {"shifts", shifts}, {"failures", bad}};
  r.check("rank formula and rank changes", bad.empty() ? Verdict::pass : Verdict::fail, "rank of a weight component",
          bad.empty() ? "" : bad.front());
}

}  // namespace

void an_weights(const AnArgs& a, const Options& opt, Report& r) {
  check_n(a.n);
  const WeightAtlas atlas(a.n);
  const auto omega = enumerate_omega(a.n);
  const auto rows = weight_rows(atlas, omega, opt);

  std::vector<std::array<std::string, 5>> table;
  table.push_back({"weight", "size", "rank(formula)", "rank(counted)", "homology"});
  std::size_t total = 0;
  std::vector<std::string> mismatches;
  Json out = Json::array();
  for (const Json& row : rows) {
    const auto h = homology_from_json(row["homology"]);
    total += row["size"].get<std::size_t>();
    if (row["rank_formula"] != row["rank_counted"]) mismatches.push_back(row["weight"].get<std::string>());
    table.push_back({row["weight"].get<std::string>(), std::to_string(row["size"].get<std::size_t>()),
                     std::to_string(row["rank_formula"].get<std::int64_t>()),
                     std::to_string(row["rank_counted"].get<std::int64_t>()), homology_summary(h)});
    out.push_back(row);
  }
  std::array<std::size_t, 5> width{};
  for (const auto& t : table)
    for (std::size_t c = 0; c < 4; ++c) width[c] = std::max(width[c], t[c].size());
  for (const auto& t : table) {
    std::ostringstream line;
    for (std::size_t c = 0; c < 4; ++c) line << std::left << std::setw(static_cast<int>(width[c])) << t[c] << " | ";
    line << t[4];
    r.line(line.str());
  }
  r.data()["n"] = a.n;
  r.data()["rows"] = std::move(out);

  const std::size_t expected = std::size_t{1} << tri_size(a.n);
  r.check("rank formula matches counted valence", mismatches.empty() ? Verdict::pass : Verdict::fail,
          "rank of a weight component", mismatches.empty() ? "" : mismatches.front());
  r.check("weight components cover all matrices", total == expected ? Verdict::pass : Verdict::fail,
          "realizable weights", std::to_string(total) + " of " + std::to_string(expected));

  if (!a.csv.empty()) {
    std::ostringstream csv;
    csv << "weight,size,rank_formula,rank_counted,homology\n";
    for (std::size_t i = 1; i < table.size(); ++i)
      csv << csv_quote(table[i][0]) << ',' << table[i][1] << ',' << table[i][2] << ',' << table[i][3] << ','
          << csv_quote(table[i][4]) << '\n';
    write_text_file(a.csv, csv.str());
  }
}

void an_component(const AnArgs& a, const Options&, Report& r) {
  check_n(a.n);
  const Weight w = weight_arg(a);
  const WeightAtlas atlas(a.n);
  const bool admissible = is_admissible_weight(w);
  const bool empty = atlas.matrices(w).empty();
  r.data()["weight"] = to_string(w);
  r.data()["admissible"] = admissible;
  r.check("non-empty exactly when admissible", admissible == !empty ? Verdict::pass : Verdict::fail,
          "realizable weights");
  if (empty) {
    r.line("weight " + to_string(w) + " is not admissible; the component is empty");
    r.data()["size"] = 0;
    return;
  }

  const WeightComponent c = weight_subgraph(atlas, w);
  const std::int64_t formula = rank_closed_form(w);
  const std::int64_t counted = counted_rank(c);
  r.line("weight " + to_string(w) + ": " + std::to_string(c.vertices.size()) + " vertices, rank " +
         std::to_string(counted));
  r.data()["size"] = c.vertices.size();
  r.data()["rank"] = counted;
  r.check("rank formula matches counted valence", formula == counted ? Verdict::pass : Verdict::fail,
          "rank of a weight component", "formula " + std::to_string(formula) + ", counted " + std::to_string(counted));

  const auto fac = is_reducible(w);
  if (fac) {
    std::string pos;
    for (std::size_t i = 0; i < fac->positions.size(); ++i) pos += (i ? "," : "") + std::to_string(fac->positions[i]);
    r.line("reducible at positions {" + pos + "}: " + to_string(fac->first) + " x " + to_string(fac->second));
    r.data()["factors"] = {to_string(fac->first), to_string(fac->second)};
    r.check("component is the product of its factors", verify_product_iso(atlas, w));
  } else {
    r.line("irreducible");
  }

  Json verts = Json::array();
  for (const auto& m : c.vertices)
    verts.push_back({{"monomial", monomial_name(atlas.basis(), m.bits)}, {"grade", std::popcount(m.bits)}});
  for (std::size_t i = 0; i < c.vertices.size() && i < 24; ++i)
    r.line("  " + verts[i]["monomial"].get<std::string>() + " : " + std::to_string(verts[i]["grade"].get<int>()));
  if (c.vertices.size() > 24) r.line("  ... " + std::to_string(c.vertices.size() - 24) + " more");
  r.data()["vertices"] = std::move(verts);

  const auto h = homology(c.chain);
  std::istringstream lines(format_homology(h));
  for (std::string line; std::getline(lines, line);) r.line(line);
  r.data()["homology"] = homology_to_json(h);
  r.check("torsion duality", verify_torsion_duality(c.chain));
  if (a.mod) {
    const auto hp = homology(c.chain, Coefficients::prime(a.mod));
    std::istringstream pl(format_homology(hp));
    r.line("mod " + std::to_string(a.mod) + ":");
    for (std::string line; std::getline(pl, line);) r.line("  " + line);
    r.data()["homology_mod_p"] = homology_to_json(hp);
    r.check("field vanishing mod " + std::to_string(a.mod), field_vanishing_check(c.chain, a.mod));
  }
  if (!a.dot.empty())
    write_text_file(a.dot, to_dot(c.chain.graph(), &c.chain.graded().gradation(), &c.chain.connection()));
}

void an_iso(const AnArgs& a, const Options& opt, Report& r) {
  check_n(a.n);
  VertexMap f;
  if (a.op == "transpose") {
    f = iso_transpose(a.n);
  } else if (a.op == "rotate") {
    f = iso_rotation(a.n);
  } else if (a.op == "dual") {
    f = iso_duality(a.n);
  } else if (a.op == "perm") {
    std::vector<std::size_t> perm;
    if (a.perm.empty()) {
      perm.resize(a.n + 1);
      std::iota(perm.begin(), perm.end(), std::size_t{0});
      std::mt19937_64 rng(opt.seed);
      std::shuffle(perm.begin(), perm.end(), rng);
    } else {
      perm = parse_perm(a.perm);
    }
    f = iso_permutation(a.n, transposition_word(perm));
    std::string text;
    for (std::size_t i = 0; i < perm.size(); ++i) text += (i ? "," : "") + std::to_string(perm[i]);
    r.line("permutation " + text + " = " + word_text(f.word));
    r.data()["permutation"] = perm;
    r.data()["word"] = f.word;
  } else {
    throw InputError("--op must be transpose, rotate, dual or perm");
  }

  const WeightAtlas atlas(a.n);
  const std::vector<Weight> ws = a.weight.empty() ? enumerate_omega(a.n) : std::vector<Weight>{weight_arg(a)};
  std::vector<IsoReport> reports(ws.size());
  parallel_for(ws.size(), opt.jobs, [&](std::size_t i) { reports[i] = verify_iso(atlas, f, ws[i]); });

  Json out = Json::array();
  std::vector<std::string> bad;
  for (const auto& rep : reports) {
    std::string text = to_string(rep.source) + " -> " + to_string(rep.target) + ": " +
                       (rep.bijective ? "bijective" : "not bijective") + ", " +
                       (rep.edges_preserved ? "edges preserved" : "edges not preserved");
    if (f.signed_iso()) {
      text += rep.gauge ? ", signs match up to gauge" : ", no sign gauge";
      text += ", grade " + std::string(rep.grade_direction < 0 ? "-" : "+") + "k" +
              (rep.grade_offset < 0 ? " - " : " + ") + std::to_string(std::abs(rep.grade_offset));
    }
    r.line(text);
    if (rep.verdict == Verdict::fail) bad.push_back(rep.details.empty() ? text : rep.details.front());
    out.push_back({{"source", to_string(rep.source)},
                   {"target", to_string(rep.target)},
                   {"bijective", rep.bijective},
                   {"edges_preserved", rep.edges_preserved},
                   {"gauge", rep.gauge.has_value()},
                   {"verdict", to_string(rep.verdict)}});
  }
  r.data()["op"] = to_string(f.kind);
  r.data()["components"] = std::move(out);
  r.check(to_string(f.kind) + " map is an isomorphism", bad.empty() ? Verdict::pass : Verdict::fail,
          "weight component isomorphisms", bad.empty() ? "" : bad.front());
}

void an_verify(const AnArgs& a, const Options& opt, Report& r) {
  check_n(a.n);
  const std::string& p = a.property;
  if (p != "all" && p != "realizable" && p != "connected" && p != "product" && p != "rank")
    throw InputError("--property must be realizable, connected, product, rank or all");
  const WeightAtlas atlas(a.n);
  const auto omega = enumerate_omega(a.n);
  r.data()["n"] = a.n;
  r.data()["weights"] = omega.size();
  if (p == "all" || p == "realizable") verify_realizable(atlas, r);
  if (p == "all" || p == "connected") verify_connected(atlas, omega, opt.jobs, r);
  if (p == "all" || p == "product") verify_product(atlas, omega, opt.jobs, r);
  if (p == "all" || p == "rank") verify_rank(atlas, omega, opt.jobs, r);
}

}  // namespace gad::cli
