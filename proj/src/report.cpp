#include "kanext/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace kanext {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Error: return "error";
  }
  return "error";
}

void Record::fail(const std::string& reason) {
  if (verdict == Verdict::Pass) {
    verdict = Verdict::Fail;
    add("failure", reason);
  }
}

bool Report::all_pass() const {
  return std::all_of(records.begin(), records.end(), [](const Record& r) { return r.verdict == Verdict::Pass; });
}

namespace {

std::string one_line(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '\n') {
      out += "\\n";
    } else if (ch == '\r') {
      out += "\\r";
    } else {
      out += ch;
    }
  }
  return out;
}

std::string summary(const Report& report, const char* sep) {
  std::size_t counts[3] = {0, 0, 0};
  for (const Record& r : report.records) ++counts[static_cast<int>(r.verdict)];
  std::ostringstream out;
  out << "pass=" << counts[0] << sep << "fail=" << counts[1] << sep << "error=" << counts[2];
  return out.str();
}

std::string emit_machine(const Report& report) {
  std::ostringstream out;
  out << "report: kanext 1\n";
  out << "source: " << one_line(report.source) << "\n";
  out << "records: " << report.records.size() << "\n";
  for (std::size_t i = 0; i < report.records.size(); ++i) {
    const Record& r = report.records[i];
    out << "\n";
    out << "record: " << i + 1 << "\n";
    out << "command: " << one_line(r.command) << "\n";
    out << "tag: " << one_line(r.tag) << "\n";
    out << "verdict: " << to_string(r.verdict) << "\n";
    for (const auto& [k, v] : r.fields) out << one_line(k) << ": " << one_line(v) << "\n";
    out << "end: " << i + 1 << "\n";
  }
  out << "\n";
  out << "summary: " << summary(report, " ") << "\n";
  return out.str();
}

std::string emit_human(const Report& report) {
  std::ostringstream out;
  out << "kanext report for " << report.source << "\n";
  for (std::size_t i = 0; i < report.records.size(); ++i) {
    const Record& r = report.records[i];
    std::string verdict = to_string(r.verdict);
    std::transform(verdict.begin(), verdict.end(), verdict.begin(), [](char ch) { return static_cast<char>(std::toupper(ch)); });
    char time[32];
    std::snprintf(time, sizeof time, "%.3f s", r.seconds);
    out << "\n[" << i + 1 << "] " << r.command << "\n";
    std::size_t width = 7;  // "verdict"
    for (const auto& f : r.fields) width = std::max(width, f.first.size());
    auto line = [&](const std::string& k, const std::string& v) {
      out << "    " << k << std::string(width - k.size() + 2, ' ');
      // continuation lines of a multi-line value stay under the value column
      for (char ch : v) {
        out << ch;
        if (ch == '\n') out << std::string(4 + width + 2, ' ');
      }
      out << "\n";
    };
    line("verdict", verdict + "  (" + time + ")");
    line("tag", r.tag);
    for (const auto& [k, v] : r.fields) line(k, v);
  }
  out << "\nsummary: " << summary(report, ", ") << "\n";
  return out.str();
}

}  // namespace

std::string emit(const Report& report, Format format) {
  return format == Format::Machine ? emit_machine(report) : emit_human(report);
}

}  // namespace kanext
