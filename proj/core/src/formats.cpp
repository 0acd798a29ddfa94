#include "padyn/formats.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "padyn/errors.hpp"

namespace padyn {

namespace {

struct Line {
  int number;
  std::vector<std::string> fields;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::istringstream in{std::string(raw)};
    Line line{number, {}};
    for (std::string field; in >> field;) line.fields.push_back(field);
    if (!line.fields.empty()) lines.push_back(std::move(line));
    pos = end + 1;
  }
  return lines;
}

[[noreturn]] void fail(const Line& line, const std::string& message) {
  throw InputError("line " + std::to_string(line.number) + ": " + message);
}

template <typename T>
T parse_number(const Line& line, const std::string& field) {
  T value{};
  const auto* first = field.data();
  const auto* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) fail(line, "expected an integer, got '" + field + "'");
  return value;
}

void expect_fields(const Line& line, std::size_t count) {
  if (line.fields.size() != count) {
    fail(line, "expected " + std::to_string(count) + " fields, got " +
                   std::to_string(line.fields.size()));
  }
}

void expect_header(const std::vector<Line>& lines, std::string_view tag) {
  if (lines.empty()) throw InputError("empty document");
  const auto& head = lines.front();
  if (head.fields.size() != 2 || head.fields[0] != tag) {
    fail(head, "expected header '" + std::string(tag) + " " + std::to_string(kFormatVersion) + "'");
  }
  if (parse_number<int>(head, head.fields[1]) != kFormatVersion) {
    fail(head, "unsupported format version " + head.fields[1]);
  }
}

template <typename T>
void set_once(std::optional<T>& slot, T value, const Line& line) {
  if (slot) fail(line, "duplicate '" + line.fields[0] + "'");
  slot = value;
}

}  // namespace

DocumentKind sniff_document(std::string_view text) {
  const auto lines = tokenize(text);
  if (lines.empty()) return DocumentKind::Unknown;
  const auto& tag = lines.front().fields.front();
  if (tag == kSeriesTag) return DocumentKind::Series;
  if (tag == kTransducerTag) return DocumentKind::Transducer;
  return DocumentKind::Unknown;
}

MahlerSeries parse_series(std::string_view text) {
  const auto lines = tokenize(text);
  expect_header(lines, kSeriesTag);
  std::optional<std::uint64_t> p;
  std::optional<int> n, K;
  std::map<std::size_t, std::int64_t> coeffs;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& line = lines[i];
    const auto& key = line.fields[0];
    if (key == "p") {
      expect_fields(line, 2);
      set_once(p, parse_number<std::uint64_t>(line, line.fields[1]), line);
    } else if (key == "n") {
      expect_fields(line, 2);
      set_once(n, parse_number<int>(line, line.fields[1]), line);
    } else if (key == "K") {
      expect_fields(line, 2);
      set_once(K, parse_number<int>(line, line.fields[1]), line);
    } else if (key == "a") {
      expect_fields(line, 3);
      const auto index = parse_number<std::size_t>(line, line.fields[1]);
      if (!coeffs.emplace(index, parse_number<std::int64_t>(line, line.fields[2])).second) {
        fail(line, "duplicate coefficient a_" + line.fields[1]);
      }
    } else {
      fail(line, "unknown directive '" + key + "'");
    }
  }
  if (!p || !n || !K) throw InputError("series document must declare p, n and K");
  if (coeffs.empty()) throw InputError("series document lists no coefficients");
  if (coeffs.rbegin()->first + 1 != coeffs.size()) {
    throw InputError("series coefficients must cover every index from 0 to the largest");
  }
  std::vector<PadicInt> values;
  for (const auto& [index, v] : coeffs) values.push_back(PadicInt::make(*p, *K, v));
  return MahlerSeries(*p, *n, std::move(values));
}

std::string format_series(const MahlerSeries& series) {
  std::string out = std::string(kSeriesTag) + " " + std::to_string(kFormatVersion) + "\n";
  out += "p " + std::to_string(series.prime()) + "\n";
  out += "n " + std::to_string(series.delay()) + "\n";
  out += "K " + std::to_string(series.precision()) + "\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    out += "a " + std::to_string(i) + " " + std::to_string(series.coeffs()[i].value()) + "\n";
  }
  return out;
}

std::shared_ptr<const TableTransducer> parse_transducer(std::string_view text) {
  const auto lines = tokenize(text);
  expect_header(lines, kTransducerTag);
  std::optional<std::uint64_t> p;
  std::optional<bool> synchronous;
  std::vector<std::string> names;
  std::map<std::string, StateId> ids;
  std::optional<std::string> initial;
  struct Row {
    Line line;
    StateId state;
    Letter letter;
    std::string next;
    Word output;
  };
  std::vector<Row> rows;

  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& line = lines[i];
    const auto& key = line.fields[0];
    if (key == "p") {
      expect_fields(line, 2);
      set_once(p, parse_number<std::uint64_t>(line, line.fields[1]), line);
    } else if (key == "kind") {
      expect_fields(line, 2);
      if (line.fields[1] != "sync" && line.fields[1] != "async") {
        fail(line, "kind must be 'sync' or 'async'");
      }
      set_once(synchronous, line.fields[1] == "sync", line);
    } else if (key == "states") {
      if (!names.empty()) fail(line, "duplicate 'states'");
      if (line.fields.size() < 2) fail(line, "no states listed");
      for (std::size_t j = 1; j < line.fields.size(); ++j) {
        if (!ids.emplace(line.fields[j], static_cast<StateId>(names.size())).second) {
          fail(line, "duplicate state '" + line.fields[j] + "'");
        }
        names.push_back(line.fields[j]);
      }
    } else if (key == "initial") {
      expect_fields(line, 2);
      set_once(initial, line.fields[1], line);
    } else if (key == "t") {
      expect_fields(line, 5);
      if (names.empty() || !p) fail(line, "'p' and 'states' must precede transitions");
      const auto from = ids.find(line.fields[1]);
      if (from == ids.end()) fail(line, "unknown state '" + line.fields[1] + "'");
      const auto letter = parse_number<Letter>(line, line.fields[2]);
      if (letter >= *p) fail(line, "input letter out of range");
      Word output;
      if (line.fields[4] != "-") {
        std::string_view rest = line.fields[4];
        while (!rest.empty()) {
          const auto comma = rest.find(',');
          const std::string piece(rest.substr(0, comma));
          output.push_back(parse_number<Letter>(line, piece));
          rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        }
      }
      rows.push_back({line, from->second, letter, line.fields[3], std::move(output)});
    } else {
      fail(line, "unknown directive '" + key + "'");
    }
  }
  if (!p || !synchronous || names.empty() || !initial) {
    throw InputError("transducer document must declare p, kind, states and initial");
  }
  const auto init = ids.find(*initial);
  if (init == ids.end()) throw InputError("initial state '" + *initial + "' is not declared");

  std::vector<std::optional<Transition>> slots(names.size() * *p);
  for (auto& row : rows) {
    const auto next = ids.find(row.next);
    if (next == ids.end()) fail(row.line, "unknown state '" + row.next + "'");
    auto& slot = slots[static_cast<std::size_t>(row.state) * *p + row.letter];
    if (slot) fail(row.line, "transition defined twice");
    slot = Transition{next->second, std::move(row.output)};
  }
  std::vector<Transition> table;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i]) {
      throw InputError("missing transition for (" + names[i / *p] + ", " +
                       std::to_string(i % *p) + ")");
    }
    table.push_back(std::move(*slots[i]));
  }
  return std::make_shared<TableTransducer>(*p, *synchronous, std::move(names), init->second,
                                           std::move(table), "file");
}

std::string format_transducer(const TableTransducer& t) {
  std::string out = std::string(kTransducerTag) + " " + std::to_string(kFormatVersion) + "\n";
  out += "p " + std::to_string(t.prime()) + "\n";
  out += std::string("kind ") + (t.synchronous() ? "sync" : "async") + "\n";
  out += "states";
  for (const auto& name : t.state_names()) out += " " + name;
  out += "\ninitial " + t.state_name(t.initial_state()) + "\n";
  for (std::size_t s = 0; s < t.state_count(); ++s) {
    for (std::uint64_t a = 0; a < t.prime(); ++a) {
      const auto tr = t.step(static_cast<StateId>(s), static_cast<Letter>(a));
      std::string word;
      for (Letter b : tr.output) word += (word.empty() ? "" : ",") + std::to_string(b);
      out += "t " + t.state_names()[s] + " " + std::to_string(a) + " " +
             t.state_name(tr.next) + " " + (word.empty() ? "-" : word) + "\n";
    }
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw InputError("failed writing '" + path.string() + "'");
}

}  // namespace padyn
