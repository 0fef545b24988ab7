#include "calib/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "calib/error.hpp"

namespace calib::csv {

namespace {

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// whitespace-trimmed view of one field
std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      fields.push_back(trim(line.substr(start, i - start)));
      start = i + 1;
    }
  }
  return fields;
}

double parse_double(std::string_view field, const std::string& origin,
                    std::size_t line_no, const char* what) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || field.empty()) {
    throw Error(origin + " line " + std::to_string(line_no) + ": cannot parse " +
                what + " '" + std::string(field) + "'");
  }
  return value;
}

struct LineCursor {
  std::string_view text;
  std::size_t pos = 0;
  std::size_t line_no = 0;

  // next non-empty, non-comment line; false at end of input
  bool next(std::string_view& line) {
    while (pos <= text.size()) {
      if (pos == text.size()) return false;
      std::size_t eol = text.find('\n', pos);
      if (eol == std::string_view::npos) eol = text.size();
      std::string_view raw = text.substr(pos, eol - pos);
      pos = eol + 1;
      ++line_no;
      const std::string_view t = trim(raw);
      if (t.empty() || t.front() == '#') continue;
      line = raw;
      return true;
    }
    return false;
  }
};

}  // namespace

Dataset parse_samples(std::string_view text, const std::string& origin) {
  Dataset out;
  LineCursor cursor{text};
  std::string_view line;
  bool first = true;
  int arity = 0;  // 2 or 3 once known

  while (cursor.next(line)) {
    const auto fields = split_fields(line);
    if (first) {
      first = false;
      if (!fields.empty() && fields[0] == "score") {
        // header row; remember whether it promises a true_prob column
        if (fields.size() >= 3 && fields[2] == "true_prob") arity = 3;
        else arity = 2;
        continue;
      }
    }
    const std::size_t line_no = cursor.line_no;
    if (arity == 0) arity = (fields.size() >= 3) ? 3 : 2;
    if (fields.size() != static_cast<std::size_t>(arity)) {
      throw Error(origin + " line " + std::to_string(line_no) + ": expected " +
                  std::to_string(arity) + " fields, got " +
                  std::to_string(fields.size()));
    }

    const double score = parse_double(fields[0], origin, line_no, "score");
    if (!(score >= 0.0 && score <= 1.0)) {
      throw Error(origin + " line " + std::to_string(line_no) + ": score " +
                  std::string(fields[0]) + " outside [0,1]");
    }
    const double outcome = parse_double(fields[1], origin, line_no, "outcome");
    if (outcome != 0.0 && outcome != 1.0) {
      throw Error(origin + " line " + std::to_string(line_no) + ": outcome " +
                  std::string(fields[1]) + " not in {0,1}");
    }
    out.samples.push_back({score, outcome});

    if (arity == 3) {
      const double tp = parse_double(fields[2], origin, line_no, "true_prob");
      if (!(tp >= 0.0 && tp <= 1.0)) {
        throw Error(origin + " line " + std::to_string(line_no) + ": true_prob " +
                    std::string(fields[2]) + " outside [0,1]");
      }
      out.true_probs.push_back(tp);
    }
  }

  if (out.samples.empty()) {
    throw Error(origin + ": no observations");
  }
  return out;
}

Dataset load_samples(const std::string& path) {
  return parse_samples(read_text_file(path), path);
}

std::string format_samples(std::span<const PairedSample> samples,
                           std::span<const double> true_probs) {
  if (!true_probs.empty() && true_probs.size() != samples.size()) {
    throw Error("true_probs length does not match sample count");
  }
  std::string out;
  out += true_probs.empty() ? "score,outcome\n" : "score,outcome,true_prob\n";
  for (std::size_t i = 0; i < samples.size(); ++i) {
    out += fmt17(samples[i].score);
    out += samples[i].outcome == 1.0 ? ",1" : ",0";
    if (!true_probs.empty()) {
      out += ',';
      out += fmt17(true_probs[i]);
    }
    out += '\n';
  }
  return out;
}

std::string format_curve(const CumulativeCurve& curve) {
  std::string out = "# triangle_half_height=";
  out += fmt17(curve.triangle_half_height);
  out += "\nk,k_over_n,score,diff\n";
  for (std::size_t k = 0; k < curve.size(); ++k) {
    out += std::to_string(k + 1);
    out += ',';
    out += fmt17(curve.abscissas[k]);
    out += ',';
    out += fmt17(curve.score_at_index[k]);
    out += ',';
    out += fmt17(curve.ordinates[k]);
    out += '\n';
  }
  return out;
}

CumulativeCurve parse_curve(std::string_view text, const std::string& origin) {
  CumulativeCurve curve;

  // the triangle line is a comment, so scan for it before the cursor
  const std::string_view tag = "# triangle_half_height=";
  const std::size_t at = text.find(tag);
  if (at == std::string_view::npos) {
    throw Error(origin + ": missing '# triangle_half_height=' line");
  }
  std::size_t end = text.find('\n', at);
  if (end == std::string_view::npos) end = text.size();
  curve.triangle_half_height =
      parse_double(trim(text.substr(at + tag.size(), end - at - tag.size())),
                   origin, 1, "triangle_half_height");

  LineCursor cursor{text};
  std::string_view line;
  bool first = true;
  while (cursor.next(line)) {
    const auto fields = split_fields(line);
    if (first) {
      first = false;
      if (!fields.empty() && fields[0] == "k") continue;  // header
    }
    if (fields.size() != 4) {
      throw Error(origin + " line " + std::to_string(cursor.line_no) +
                  ": expected 4 fields, got " + std::to_string(fields.size()));
    }
    curve.abscissas.push_back(parse_double(fields[1], origin, cursor.line_no, "k_over_n"));
    curve.score_at_index.push_back(parse_double(fields[2], origin, cursor.line_no, "score"));
    curve.ordinates.push_back(parse_double(fields[3], origin, cursor.line_no, "diff"));
  }
  if (curve.ordinates.empty()) {
    throw Error(origin + ": no curve rows");
  }
  return curve;
}

std::string format_diagram(const ReliabilityDiagram& diagram) {
  std::string out = "bin,score_lo,score_hi,count,mean_score,success_rate\n";
  for (std::size_t j = 0; j < diagram.bins.size(); ++j) {
    const ReliabilityBin& b = diagram.bins[j];
    out += std::to_string(j + 1);
    out += ',';
    out += fmt17(b.score_lo);
    out += ',';
    out += fmt17(b.score_hi);
    out += ',';
    out += std::to_string(b.count);
    out += ',';
    out += fmt17(b.mean_score);
    out += ',';
    out += fmt17(b.success_rate);
    out += '\n';
  }
  return out;
}

std::string format_ensemble(const BootstrapEnsemble& ensemble) {
  std::string out = "replicate,bin,mean_score,success_rate\n";
  for (std::size_t r = 0; r < ensemble.replicates.size(); ++r) {
    const auto& bins = ensemble.replicates[r].bins;
    for (std::size_t j = 0; j < bins.size(); ++j) {
      out += std::to_string(r + 1);
      out += ',';
      out += std::to_string(j + 1);
      out += ',';
      out += fmt17(bins[j].mean_score);
      out += ',';
      out += fmt17(bins[j].success_rate);
      out += '\n';
    }
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error("failed reading '" + path + "'");
  return std::move(ss).str();
}

void write_text_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.flush();
  if (!out) throw Error("failed writing '" + path + "'");
}

}  // namespace calib::csv
