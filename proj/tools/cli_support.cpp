#include "cli_support.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <sstream>

#include "planarstack/errors.hpp"

namespace planarstack::cli {

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::csv;
  if (name == "jsonl") return Format::jsonl;
  throw ParseError("unknown output format '" + name + "'", 0);
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

TableWriter::TableWriter(std::ostream& out, Format format,
                         std::vector<std::string> columns)
    : out_(out), format_(format), columns_(std::move(columns)) {}

void TableWriter::note(const std::string& key, const std::string& value) {
  notes_.emplace_back(key, value);
}

void TableWriter::write_header_if_needed() {
  if (header_written_) return;
  header_written_ = true;
  if (format_ == Format::csv) {
    for (const auto& [k, v] : notes_) out_ << "# " << k << ": " << v << '\n';
    for (std::size_t i = 0; i < columns_.size(); ++i) {
      out_ << columns_[i] << (i + 1 < columns_.size() ? "," : "");
    }
    out_ << '\n';
  } else if (!notes_.empty()) {
    out_ << '{';
    for (std::size_t i = 0; i < notes_.size(); ++i) {
      out_ << "\"_" << notes_[i].first << "\":\"" << notes_[i].second << '"'
           << (i + 1 < notes_.size() ? "," : "");
    }
    out_ << "}\n";
  }
}

void TableWriter::row(const std::vector<Cell>& cells) {
  write_header_if_needed();
  auto put = [&](const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) {
      out_ << fmt_double(*d);
    } else if (const auto* i = std::get_if<long long>(&c)) {
      out_ << *i;
    } else {
      const auto& s = std::get<std::string>(c);
      if (format_ == Format::jsonl) out_ << '"' << s << '"';
      else out_ << s;
    }
  };
  if (format_ == Format::csv) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      put(cells[i]);
      out_ << (i + 1 < cells.size() ? "," : "");
    }
    out_ << '\n';
  } else {
    out_ << '{';
    for (std::size_t i = 0; i < cells.size(); ++i) {
      out_ << '"' << columns_[i] << "\":";
      // JSON has no inf/nan literals; quote them
      if (const auto* d = std::get_if<double>(&cells[i]);
          d && !std::isfinite(*d)) {
        out_ << '"' << fmt_double(*d) << '"';
      } else {
        put(cells[i]);
      }
      out_ << (i + 1 < cells.size() ? "," : "");
    }
    out_ << "}\n";
  }
}

std::vector<double> SweepSpec::values() const {
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double t = points == 1 ? 0.0
                                 : static_cast<double>(i) /
                                       static_cast<double>(points - 1);
    v.push_back(log ? min * std::pow(max / min, t) : min + (max - min) * t);
  }
  return v;
}

SweepSpec parse_sweep(const std::string& text,
                      const std::vector<std::string>& axes) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ':')) parts.push_back(item);
  if (parts.size() < 4 || parts.size() > 5) {
    throw ParseError("sweep must be axis:min:max:points[:log|:linear], got '" +
                     text + "'", 0);
  }
  SweepSpec spec;
  spec.axis = parts[0];
  bool known = false;
  for (const auto& a : axes) known = known || a == spec.axis;
  if (!known) {
    std::string names;
    for (const auto& a : axes) names += (names.empty() ? "" : ", ") + a;
    throw ParseError("sweep axis '" + spec.axis + "' not supported here "
                     "(expected one of: " + names + ")", 0);
  }
  try {
    spec.min = std::stod(parts[1]);
    spec.max = std::stod(parts[2]);
    spec.points = std::stoi(parts[3]);
  } catch (const std::exception&) {
    throw ParseError("bad numeric field in sweep '" + text + "'", 0);
  }
  if (parts.size() == 5) {
    if (parts[4] == "log") spec.log = true;
    else if (parts[4] == "linear") spec.log = false;
    else throw ParseError("sweep scale must be 'log' or 'linear'", 0);
  }
  if (!(spec.min < spec.max)) {
    throw ParseError("sweep needs min < max", 0);
  }
  if (spec.points < 2) {
    throw ParseError("sweep needs at least 2 points", 0);
  }
  if (spec.log && !(spec.min > 0.0)) {
    throw ParseError("log sweeps need min > 0", 0);
  }
  return spec;
}

std::vector<std::vector<Cell>> parallel_rows(
    int n, int threads,
    const std::function<std::vector<Cell>(int)>& fn) {
  std::vector<std::vector<Cell>> rows(static_cast<std::size_t>(n));
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) rows[static_cast<std::size_t>(i)] = fn(i);
    return rows;
  }
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
  std::atomic<int> next{0};
  auto worker = [&]() {
    while (true) {
      const int i = next.fetch_add(1);
      if (i >= n) return;
      try {
        rows[static_cast<std::size_t>(i)] = fn(i);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  };
  std::vector<std::future<void>> pool;
  for (int t = 0; t < threads; ++t) {
    pool.push_back(std::async(std::launch::async, worker));
  }
  for (auto& f : pool) f.get();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);  // lowest index first
  }
  return rows;
}

}  // namespace planarstack::cli
