#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "negseq/error.hpp"
#include "negseq/io.hpp"
#include "negseq/matcher.hpp"
#include "negseq/miner.hpp"
#include "negseq/pattern.hpp"
#include "negseq/threshold.hpp"

namespace py = pybind11;
using namespace negseq;

namespace {

Tokenizer tokenizer_from(const std::string& name) {
  if (name == "char") return Tokenizer::Char;
  if (name == "token") return Tokenizer::Token;
  throw ConfigError("tokenizer must be 'char' or 'token', got '" + name + "'");
}

struct PyDatabase {
  std::shared_ptr<const SequenceDatabase> db;
  Tokenizer tokenizer = Tokenizer::Char;
};

py::int_ to_pyint(Wide value) {
  const std::string digits = to_string(value);
  return py::reinterpret_steal<py::int_>(PyLong_FromString(digits.c_str(), nullptr, 10));
}

PyDatabase database_from_lines(const std::vector<std::string>& lines, const std::string& tokenizer) {
  std::ostringstream text;
  for (const auto& l : lines) text << l << '\n';
  std::istringstream in(text.str());
  InputSpec spec;
  spec.tokenizer = tokenizer_from(tokenizer);
  return PyDatabase{std::make_shared<SequenceDatabase>(read_database(in, spec)), spec.tokenizer};
}

PyDatabase database_from_file(const std::string& path, const std::string& format,
                              const std::string& tokenizer, bool permissive) {
  InputSpec spec;
  spec.path = path;
  if (format == "fasta") {
    spec.format = InputFormat::Fasta;
  } else if (format != "plain") {
    throw ConfigError("format must be 'plain' or 'fasta', got '" + format + "'");
  }
  spec.tokenizer = tokenizer_from(tokenizer);
  spec.permissive = permissive;
  return PyDatabase{std::make_shared<SequenceDatabase>(read_database(spec)), spec.tokenizer};
}

GapConstraint gap_from(const std::pair<std::uint32_t, std::uint32_t>& gap) {
  return GapConstraint(gap.first, gap.second);
}

struct PyResult {
  std::shared_ptr<const SequenceDatabase> db;
  Tokenizer tokenizer;
  MiningResult result;

  py::list patterns() const {
    py::list out;
    for (const auto& level : result.levels) {
      for (const auto& e : level.entries) {
        const auto& r = e.record;
        py::dict row;
        row["pattern"] = format_pattern(r.pattern, db->alphabet(), result.config.gap);
        row["length"] = r.pattern.length();
        row["negative"] = !r.pattern.is_positive();
        row["support"] = r.total;
        row["per_sequence"] = r.per_sequence;
        row["ofs"] = to_pyint(r.ofs);
        row["rate"] = r.rate();
        out.append(std::move(row));
      }
    }
    return out;
  }

  py::list stats() const {
    py::list out;
    for (const auto& s : result.stats.levels) {
      py::dict row;
      row["length"] = s.length;
      row["candidates"] = s.candidates;
      row["frequent"] = s.frequent;
      row["seconds"] = s.seconds;
      if (s.baseline) {
        row["baseline"] = py::dict(py::arg("join") = s.baseline->join,
                                   py::arg("enumeration") = s.baseline->enumeration,
                                   py::arg("classic") = s.baseline->classic);
      }
      out.append(std::move(row));
    }
    return out;
  }

  std::string serialize(OutputFormat format) const {
    std::ostringstream out;
    write_results(result, ResultContext{*db, tokenizer}, format, out);
    return out.str();
  }
};

PyResult run_mine(const PyDatabase& db, const std::string& rho,
                  std::pair<std::uint32_t, std::uint32_t> gap, std::size_t max_len,
                  bool positives_only, unsigned workers) {
  MiningOptions options;
  options.max_length = max_len;
  options.positives_only = positives_only;
  options.workers = workers;
  auto threshold = Threshold::parse(rho);
  std::optional<MiningResult> result;
  {
    py::gil_scoped_release release;
    result = mine(*db.db, threshold, gap_from(gap), std::move(options));
  }
  return PyResult{db.db, db.tokenizer, std::move(*result)};
}

py::dict run_support(const PyDatabase& db, const std::string& pattern_text,
                     std::pair<std::uint32_t, std::uint32_t> gap_pair, bool occurrences) {
  const auto gap = gap_from(gap_pair);
  const auto pattern = parse_pattern(pattern_text, db.db->alphabet(), gap, db.tokenizer);
  py::list per_sequence;
  py::list occ_list;
  Count total = 0;
  for (const auto& s : db.db->sequences()) {
    auto count = brute_force_support(pattern, s, gap, occurrences);
    total += count.support;
    per_sequence.append(count.support);
    if (occurrences) {
      py::list seq_occ;
      for (const auto& o : count.occurrences) seq_occ.append(py::tuple(py::cast(o.positions)));
      occ_list.append(std::move(seq_occ));
    }
  }
  const Wide ofs = ofs_total(db.db->total_length(), gap.width(), pattern.length());
  py::dict out;
  out["pattern"] = format_pattern(pattern, db.db->alphabet(), gap);
  out["support"] = total;
  out["per_sequence"] = per_sequence;
  out["ofs"] = to_pyint(ofs);
  out["rate"] = format_rate(total, ofs);
  if (occurrences) out["occurrences"] = occ_list;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Frequent positive and negative sequential patterns with gap constraints";

  static py::exception<Error> base_error(m, "Error", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", base_error.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base_error.ptr());
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);
  py::register_exception<OverflowError>(m, "OverflowError", PyExc_OverflowError);

  py::class_<PyDatabase>(m, "Database")
      .def_static("from_lines", &database_from_lines, py::arg("lines"),
                  py::arg("tokenizer") = "char")
      .def_static("read", &database_from_file, py::arg("path"), py::arg("format") = "plain",
                  py::arg("tokenizer") = "char", py::arg("permissive") = false)
      .def_property_readonly("total_length", [](const PyDatabase& d) { return d.db->total_length(); })
      .def_property_readonly("alphabet",
                             [](const PyDatabase& d) {
                               auto t = d.db->alphabet().tokens();
                               return std::vector<std::string>(t.begin(), t.end());
                             })
      .def("__len__", [](const PyDatabase& d) { return d.db->size(); })
      .def("split",
           [](const PyDatabase& d, std::size_t chunk) {
             return PyDatabase{std::make_shared<SequenceDatabase>(split_fixed_length(*d.db, chunk)),
                               d.tokenizer};
           },
           py::arg("chunk"))
      .def("lines", [](const PyDatabase& d) {
        std::ostringstream out;
        write_plain(*d.db, d.tokenizer, out);
        std::vector<std::string> lines;
        std::istringstream in(out.str());
        for (std::string l; std::getline(in, l);) lines.push_back(l);
        return lines;
      });

  py::class_<PyResult>(m, "MiningResult")
      .def("patterns", &PyResult::patterns)
      .def("stats", &PyResult::stats)
      .def("to_csv", [](const PyResult& r) { return r.serialize(OutputFormat::Csv); })
      .def("to_json", [](const PyResult& r) { return r.serialize(OutputFormat::Json); })
      .def("__len__", [](const PyResult& r) { return r.result.pattern_count(); });

  m.def("mine", &run_mine, py::arg("db"), py::arg("rho"), py::arg("gap"), py::arg("max_len") = 20,
        py::arg("positives_only") = false, py::arg("workers") = 1,
        "Mine every frequent pattern. `rho` is a decimal string such as '0.13'.");
  m.def("support", &run_support, py::arg("db"), py::arg("pattern"), py::arg("gap"),
        py::arg("occurrences") = false,
        "Count a pattern's occurrences by direct enumeration.");
  m.def("ofs_total",
        [](std::uint64_t total_length, std::uint64_t width, std::size_t length) {
          return to_pyint(ofs_total(total_length, width, length));
        },
        py::arg("total_length"), py::arg("width"), py::arg("length"));
}
