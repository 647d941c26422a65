#include "rydfact/decode.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace rydfact {

const char* classification_name(Classification c) {
  switch (c) {
    case Classification::solution: return "solution";
    case Classification::unsat: return "unsat";
    case Classification::undecidable: return "undecidable";
    case Classification::discarded_wire: return "discarded_wire";
  }
  return "?";
}

namespace {

void require_length(const MisGraph& g, const std::string& bits) {
  if (static_cast<int>(bits.size()) != g.size())
    throw Error(ErrorKind::length_mismatch, "event has " + std::to_string(bits.size()) + " bits, graph has " +
                                                std::to_string(g.size()) + " atoms");
}

}  // namespace

bool compile_wires(const MisGraph& g, const std::string& bits) {
  require_length(g, bits);
  for (const auto& w : g.wires) {
    std::vector<int> path{w.u};
    path.insert(path.end(), w.interior.begin(), w.interior.end());
    path.push_back(w.v);
    auto on = [&](std::size_t k) { return bits[path[k]] == '1'; };
    if (on(0) && on(path.size() - 1)) return false;
    for (std::size_t k = 0; k + 1 < path.size(); ++k)
      if (on(k) && on(k + 1)) return false;
    for (std::size_t k = 1; k + 1 < path.size(); ++k)
      if (!on(k) && !on(k - 1) && !on(k + 1)) return false;
  }
  return true;
}

std::string strip_wires(const MisGraph& g, const std::string& bits) {
  require_length(g, bits);
  std::string out;
  for (int k = 0; k < g.size(); ++k)
    if (!g.vertices[k].wire) out.push_back(bits[k]);
  return out;
}

bool post_select_edges(const MisGraph& g, const std::string& bits, const std::vector<Edge>& deferred) {
  require_length(g, bits);
  for (auto [u, v] : deferred)
    if (bits[u] == '1' && bits[v] == '1') return false;
  return true;
}

DecodedEvent decode_event(const MisGraph& g, const CnfFormula& f, const ProblemInstance& inst,
                          const std::string& bits) {
  std::vector<bool> chosen(g.size(), false);
  const int logical = g.size() - g.wire_atom_count();
  if (static_cast<int>(bits.size()) == g.size()) {
    for (int k = 0; k < g.size(); ++k) chosen[k] = bits[k] == '1';
  } else if (static_cast<int>(bits.size()) == logical) {
    int pos = 0;
    for (int k = 0; k < g.size(); ++k)
      if (!g.vertices[k].wire) chosen[k] = bits[pos++] == '1';
  } else {
    require_length(g, bits);
  }
  DecodedEvent out;
  out.assignment = decode_set(g, chosen);
  const auto& a = out.assignment;
  for (const auto& v : f.variables())
    if (a.get(v) == Bit::undecidable) return out;
  const auto p = a.number(VarKind::p_bit, inst.Np);
  const auto q = a.number(VarKind::q_bit, inst.Nq);
  if (!p || !q) return out;
  out.factor_pair = {{*p, *q}};
  bool sat = true;
  for (const auto& c : f.effective_clauses())
    sat = sat && std::any_of(c.begin(), c.end(), [&](const Literal& l) {
            return a.get(l.var) == (l.negated ? Bit::zero : Bit::one);
          });
  out.classification = sat && *p * *q == inst.n ? Classification::solution : Classification::unsat;
  return out;
}

double Histogram::probability(const std::string& label) const {
  for (const auto& b : buckets)
    if (b.label == label) return b.probability;
  return 0.0;
}

double Histogram::mass(Classification c) const {
  double m = 0;
  for (const auto& b : buckets)
    if (b.cls == c) m += b.probability;
  return m;
}

namespace {

std::string pair_label(const std::pair<std::uint64_t, std::uint64_t>& pq) {
  return "(" + std::to_string(pq.first) + "," + std::to_string(pq.second) + ")";
}

struct BucketKey {
  int cls;
  std::pair<std::uint64_t, std::uint64_t> pq;
  bool has_pair;
  auto operator<=>(const BucketKey&) const = default;
};

}  // namespace

Histogram decode_events(const MisGraph& g, const CnfFormula& f, const ProblemInstance& inst,
                        const std::vector<MeasurementEvent>& events) {
  std::map<BucketKey, std::uint64_t> counts;
  Histogram h;
  for (const auto& ev : events) {
    const DecodedEvent d = decode_event(g, f, inst, ev.bits);
    BucketKey key{static_cast<int>(d.classification), d.factor_pair.value_or(std::pair<std::uint64_t, std::uint64_t>{0, 0}),
                  d.factor_pair.has_value() && d.classification != Classification::undecidable};
    counts[key] += ev.count;
    h.total_events += ev.count;
  }
  h.usable_events = h.total_events;
  for (const auto& [key, count] : counts) {
    Bucket b;
    b.cls = static_cast<Classification>(key.cls);
    if (b.cls == Classification::solution) b.label = pair_label(key.pq);
    else if (b.cls == Classification::unsat) b.label = key.has_pair ? "unsat" + pair_label(key.pq) : "unsat";
    else b.label = "undecidable";
    b.count = count;
    b.probability = h.usable_events ? static_cast<double>(count) / static_cast<double>(h.usable_events) : 0.0;
    h.buckets.push_back(b);
  }
  return h;
}

std::vector<MeasurementEvent> passthrough_mitigation(std::vector<MeasurementEvent> events) { return events; }

Histogram process_events(const MisGraph& g, const CnfFormula& f, const ProblemInstance& inst,
                         const std::vector<MeasurementEvent>& raw, const EventFilter& mitigation) {
  const std::vector<MeasurementEvent> events = mitigation ? mitigation(raw) : raw;
  std::vector<MeasurementEvent> kept;
  std::uint64_t total = 0, wire = 0, edges = 0;
  for (const auto& ev : events) {
    total += ev.count;
    if (!compile_wires(g, ev.bits)) {
      wire += ev.count;
    } else if (!post_select_edges(g, ev.bits, g.deferred_edges)) {
      edges += ev.count;
    } else {
      kept.push_back(ev);
    }
  }
  Histogram h = decode_events(g, f, inst, kept);
  h.total_events = total;
  h.discarded_wire = wire;
  h.discarded_edges = edges;
  return h;
}

namespace {

std::string fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

}  // namespace

std::string histogram_csv(const Histogram& h) {
  std::string s = "label,count,probability\n";
  for (const auto& b : h.buckets) s += b.label + "," + std::to_string(b.count) + "," + fixed(b.probability, 9) + "\n";
  return s;
}

std::string histogram_svg(const Histogram& h) {
  const int bar = 28, gap = 10, left = 60, top = 20, height = 240;
  const int width = left + static_cast<int>(h.buckets.size()) * (bar + gap) + gap;
  double peak = 0;
  for (const auto& b : h.buckets) peak = std::max(peak, b.probability);
  if (peak <= 0) peak = 1;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height + top + 90
     << "\" font-family=\"sans-serif\" font-size=\"10\">\n";
  os << "<style>.solution{fill:#2b6cb0}.unsat{fill:#1a1a1a}.undecidable{fill:#a0a0a0}</style>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << top + height << "\" x2=\"" << width << "\" y2=\"" << top + height
     << "\" stroke=\"#000\"/>\n";
  os << "<text x=\"4\" y=\"" << top + 8 << "\">" << fixed(peak, 3) << "</text>\n";
  for (std::size_t k = 0; k < h.buckets.size(); ++k) {
    const auto& b = h.buckets[k];
    const double bh = height * b.probability / peak;
    const int x = left + gap + static_cast<int>(k) * (bar + gap);
    os << "<rect class=\"" << classification_name(b.cls) << "\" x=\"" << x << "\" y=\"" << fixed(top + height - bh, 2)
       << "\" width=\"" << bar << "\" height=\"" << fixed(bh, 2) << "\"/>\n";
    os << "<text transform=\"translate(" << x + bar / 2 << "," << top + height + 8 << ") rotate(60)\">" << b.label
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::io_error, "cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw Error(ErrorKind::io_error, "write failed for " + path.string());
}

}  // namespace

void export_histogram(const Histogram& h, const std::filesystem::path& csv_path,
                      const std::optional<std::filesystem::path>& svg_path) {
  write_file(csv_path, histogram_csv(h));
  if (svg_path) write_file(*svg_path, histogram_svg(h));
}

std::string events_csv(const std::vector<MeasurementEvent>& events) {
  std::vector<MeasurementEvent> sorted = events;
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.bits < b.bits; });
  std::string s = "bitstring,count\n";
  for (const auto& e : sorted) s += e.bits + "," + std::to_string(e.count) + "\n";
  return s;
}

std::vector<MeasurementEvent> parse_events_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<MeasurementEvent> out;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      header = false;
      if (line.rfind("bitstring", 0) == 0) continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw Error(ErrorKind::parse_error, "event row without count: " + line);
    MeasurementEvent e;
    e.bits = line.substr(0, comma);
    if (e.bits.find_first_not_of("01") != std::string::npos)
      throw Error(ErrorKind::parse_error, "bad bitstring: " + e.bits);
    try {
      e.count = std::stoull(line.substr(comma + 1));
    } catch (const std::exception&) {
      throw Error(ErrorKind::parse_error, "bad count in row: " + line);
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace rydfact
