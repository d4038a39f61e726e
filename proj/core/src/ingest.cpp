// Copyright 2026 The vle-miner Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vle/ingest.hpp"

#include "vle/csv.hpp"
#include "vle/error.hpp"
#include "vle/features.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace vle {
namespace {

std::size_t require_column(const std::vector<std::string>& header, const std::string& name,
                           const std::string& path) {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) {
    throw DataError(ErrorKind::MissingColumn, path, 1, "missing column '" + name + "'");
  }
  return static_cast<std::size_t>(it - header.begin());
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  for (const auto& field : csv::split_line(text)) {
    auto t = csv::trim(field);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

}  // namespace

std::vector<std::string> PresentationConfig::default_vocabulary() {
  return {"forum", "wiki",     "resource", "quiz", "oucontent",  "url",
          "subpage", "homepage", "glossary", "page", "collaborate"};
}

void PresentationConfig::check() const {
  auto fail = [](const std::string& msg) { throw DataError(ErrorKind::InvalidConfig, msg); };
  if (num_weeks < 5) fail("num_weeks must be >= 5 (weeks 0-4 are always analysed)");
  if (pass_threshold <= 0 || pass_threshold > 100) fail("pass_threshold must be in 1..100");
  if (tma_of_interest < 1) fail("tma_of_interest must be positive");
  if (content_vocabulary.empty()) fail("content_types must not be empty");
  auto sorted = content_vocabulary;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    fail("content_types contains duplicates");
  }
  for (const auto& name : content_vocabulary) {
    if (name.empty()) fail("content_types contains an empty name");
  }
  if (min_day && max_day && *min_day > *max_day) fail("min_day exceeds max_day");
}

int PresentationConfig::type_index(const std::string& name) const {
  const auto it = std::find(content_vocabulary.begin(), content_vocabulary.end(), name);
  return it == content_vocabulary.end() ? -1 : static_cast<int>(it - content_vocabulary.begin());
}

PresentationConfig parse_config(const std::string& text, const std::string& source) {
  PresentationConfig config;
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = csv::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw DataError(ErrorKind::InvalidConfig, source, line_no, "expected key=value");
    }
    const std::string key(csv::trim(line.substr(0, eq)));
    const std::string value(csv::trim(line.substr(eq + 1)));
    auto as_int = [&]() {
      std::int64_t v = 0;
      if (!csv::parse_int(value, v)) {
        throw DataError(ErrorKind::InvalidConfig, source, line_no,
                        "'" + key + "' needs an integer, got '" + value + "'");
      }
      return v;
    };
    if (key == "num_weeks") {
      config.num_weeks = static_cast<int>(as_int());
    } else if (key == "pass_threshold") {
      config.pass_threshold = static_cast<int>(as_int());
    } else if (key == "tma_of_interest") {
      config.tma_of_interest = static_cast<int>(as_int());
    } else if (key == "content_types") {
      config.content_vocabulary = split_list(value);
    } else if (key == "min_day") {
      config.min_day = as_int();
    } else if (key == "max_day") {
      config.max_day = as_int();
    } else if (key == "fail_class") {
      if (value == "not_submitted_or_failed") {
        config.fail_class = FailClass::NotSubmittedOrFailed;
      } else if (value == "not_submitted") {
        config.fail_class = FailClass::NotSubmittedOnly;
      } else {
        throw DataError(ErrorKind::InvalidConfig, source, line_no,
                        "fail_class must be not_submitted_or_failed or not_submitted");
      }
    } else {
      throw DataError(ErrorKind::InvalidConfig, source, line_no, "unknown key '" + key + "'");
    }
  }
  config.check();
  return config;
}

PresentationConfig load_config(const std::string& path) {
  return parse_config(csv::read_text(path), path);
}

std::string format_config(const PresentationConfig& config) {
  std::ostringstream out;
  out << "num_weeks=" << config.num_weeks << '\n';
  out << "pass_threshold=" << config.pass_threshold << '\n';
  out << "tma_of_interest=" << config.tma_of_interest << '\n';
  out << "content_types=";
  for (std::size_t i = 0; i < config.content_vocabulary.size(); ++i) {
    out << (i ? "," : "") << config.content_vocabulary[i];
  }
  out << '\n';
  if (config.min_day) out << "min_day=" << *config.min_day << '\n';
  if (config.max_day) out << "max_day=" << *config.max_day << '\n';
  out << "fail_class="
      << (config.fail_class == FailClass::NotSubmittedOnly ? "not_submitted"
                                                            : "not_submitted_or_failed")
      << '\n';
  return out.str();
}

Dataset::Dataset(std::vector<ClickRecord> clicks, std::vector<AssessmentRecord> assessments,
                 PresentationConfig config)
    : clicks_(std::move(clicks)), assessments_(std::move(assessments)), config_(std::move(config)) {
  for (const auto& c : clicks_) roster_.insert(c.student);
  for (const auto& a : assessments_) roster_.insert(a.student);
}

std::vector<ClickRecord> load_clicks(const std::string& path, const PresentationConfig& config) {
  using Key = std::tuple<std::string, std::int64_t, std::string>;
  std::map<Key, std::int64_t> merged;
  std::size_t col_student = 0, col_date = 0, col_type = 0, col_clicks = 0;
  std::size_t width = 0;

  csv::read_file(
      path,
      [&](const std::vector<std::string>& header) {
        col_student = require_column(header, "id_student", path);
        col_date = require_column(header, "date", path);
        col_type = require_column(header, "activity_type", path);
        col_clicks = require_column(header, "sum_click", path);
        width = header.size();
      },
      [&](std::size_t line, const std::vector<std::string>& f) {
        if (f.size() != width) {
          throw DataError(ErrorKind::MalformedRow, path, line,
                          "expected " + std::to_string(width) + " fields, got " +
                              std::to_string(f.size()));
        }
        const std::string student(csv::trim(f[col_student]));
        if (student.empty()) {
          throw DataError(ErrorKind::MalformedRow, path, line, "empty id_student");
        }
        std::int64_t day = 0;
        if (!csv::parse_int(f[col_date], day)) {
          throw DataError(ErrorKind::MalformedRow, path, line,
                          "date '" + f[col_date] + "' is not an integer");
        }
        if ((config.min_day && day < *config.min_day) ||
            (config.max_day && day > *config.max_day)) {
          throw DataError(ErrorKind::DayOutOfWindow, path, line,
                          "day offset " + std::to_string(day) + " outside the presentation window");
        }
        const std::string type(csv::trim(f[col_type]));
        if (config.type_index(type) < 0) {
          throw DataError(ErrorKind::UnknownContentType, path, line,
                          "unknown content type '" + type + "'");
        }
        std::int64_t clicks = 0;
        if (!csv::parse_int(f[col_clicks], clicks)) {
          throw DataError(ErrorKind::NonIntegerClicks, path, line,
                          "sum_click '" + f[col_clicks] + "' is not an integer");
        }
        if (clicks < 0) {
          throw DataError(ErrorKind::NegativeClicks, path, line,
                          "negative sum_click " + std::to_string(clicks));
        }
        merged[Key{student, day, type}] += clicks;
      });

  std::vector<ClickRecord> records;
  records.reserve(merged.size());
  for (const auto& [key, clicks] : merged) {
    records.push_back(ClickRecord{StudentId{std::get<0>(key)}, std::get<1>(key), std::get<2>(key), clicks});
  }
  return records;
}

std::vector<AssessmentRecord> load_assessments(const std::string& path) {
  std::map<std::pair<std::string, int>, std::optional<int>> rows;
  std::size_t col_student = 0, col_tma = 0, col_score = 0;
  std::size_t width = 0;

  csv::read_file(
      path,
      [&](const std::vector<std::string>& header) {
        col_student = require_column(header, "id_student", path);
        col_tma = require_column(header, "assessment", path);
        col_score = require_column(header, "score", path);
        width = header.size();
      },
      [&](std::size_t line, const std::vector<std::string>& f) {
        if (f.size() != width) {
          throw DataError(ErrorKind::MalformedRow, path, line,
                          "expected " + std::to_string(width) + " fields, got " +
                              std::to_string(f.size()));
        }
        const std::string student(csv::trim(f[col_student]));
        if (student.empty()) {
          throw DataError(ErrorKind::MalformedRow, path, line, "empty id_student");
        }
        std::int64_t tma = 0;
        if (!csv::parse_int(f[col_tma], tma) || tma < 1 || tma > 1000) {
          throw DataError(ErrorKind::MalformedRow, path, line,
                          "assessment '" + f[col_tma] + "' is not a positive TMA index");
        }
        std::optional<int> score;
        if (!csv::trim(f[col_score]).empty()) {
          std::int64_t v = 0;
          if (!csv::parse_int(f[col_score], v)) {
            throw DataError(ErrorKind::MalformedRow, path, line,
                            "score '" + f[col_score] + "' is not an integer");
          }
          if (v < 0 || v > 100) {
            throw DataError(ErrorKind::ScoreOutOfRange, path, line,
                            "score " + std::to_string(v) + " outside 0..100");
          }
          score = static_cast<int>(v);
        }
        const auto [it, inserted] = rows.emplace(std::pair{student, static_cast<int>(tma)}, score);
        if (!inserted) {
          throw DataError(ErrorKind::DuplicateAssessment, path, line,
                          "second record for " + student + " TMA " + std::to_string(tma));
        }
      });

  std::vector<AssessmentRecord> records;
  records.reserve(rows.size());
  for (const auto& [key, score] : rows) {
    records.push_back(AssessmentRecord{StudentId{key.first}, key.second, score});
  }
  return records;
}

Dataset load_dataset(const std::string& clicks_path, const std::string& assessments_path,
                     const PresentationConfig& config) {
  config.check();
  return Dataset(load_clicks(clicks_path, config), load_assessments(assessments_path), config);
}

ValidationReport validate(const Dataset& dataset) {
  ValidationReport report;
  report.students = dataset.roster().size();
  report.click_records = dataset.clicks().size();
  report.assessment_records = dataset.assessments().size();

  std::set<StudentId> with_clicks;
  std::set<int> weeks;
  for (const auto& c : dataset.clicks()) {
    report.total_clicks += c.clicks;
    with_clicks.insert(c.student);
    if (c.clicks > 0) weeks.insert(day_to_week(c.day_offset, dataset.config()));
  }
  report.weeks_covered = weeks.size();

  std::set<StudentId> with_tma;
  std::set<StudentId> assessed;
  for (const auto& a : dataset.assessments()) {
    assessed.insert(a.student);
    if (a.tma_index == dataset.config().tma_of_interest) with_tma.insert(a.student);
  }
  for (const auto& s : with_clicks) {
    if (!with_tma.contains(s)) report.missing_tma.push_back(s);
  }
  for (const auto& s : assessed) {
    if (!with_clicks.contains(s)) report.without_clicks.push_back(s);
  }
  return report;
}

std::string format_report(const ValidationReport& report) {
  std::ostringstream out;
  out << "students=" << report.students << '\n';
  out << "click_records=" << report.click_records << '\n';
  out << "assessment_records=" << report.assessment_records << '\n';
  out << "total_clicks=" << report.total_clicks << '\n';
  out << "weeks_covered=" << report.weeks_covered << '\n';
  out << "missing_tma=" << report.missing_tma.size() << '\n';
  for (const auto& s : report.missing_tma) out << "missing_tma_student=" << s.value << '\n';
  out << "without_clicks=" << report.without_clicks.size() << '\n';
  for (const auto& s : report.without_clicks) out << "without_clicks_student=" << s.value << '\n';
  return out.str();
}

}  // namespace vle
