#include "motkit/mot_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

namespace motkit {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      break;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

double parse_double(std::string_view field, std::size_t line_no) {
  double value = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || field.empty()) {
    throw ParseError("non-numeric field '" + std::string(field) + "'", line_no);
  }
  return value;
}

std::int64_t parse_int(std::string_view field, std::size_t line_no) {
  const double value = parse_double(field, line_no);
  const double rounded = std::nearbyint(value);
  if (std::abs(value - rounded) > 1e-9) {
    throw ParseError("expected integer field, got '" + std::string(field) + "'",
                     line_no);
  }
  return static_cast<std::int64_t>(rounded);
}

}  // namespace

std::vector<TrackEntry> parse_mot_file(std::istream& in, MotFileKind kind) {
  std::vector<TrackEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  const std::size_t expected_fields = kind == MotFileKind::GroundTruth ? 9 : 10;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) {
      continue;
    }
    const auto fields = split_fields(line);
    if (fields.size() != expected_fields) {
      throw ParseError("expected " + std::to_string(expected_fields) +
                           " comma-separated fields, got " +
                           std::to_string(fields.size()),
                       line_no);
    }
    TrackEntry e;
    e.frame = parse_int(fields[0], line_no);
    e.id = parse_int(fields[1], line_no);
    e.box.left = parse_double(fields[2], line_no);
    e.box.top = parse_double(fields[3], line_no);
    e.box.width = parse_double(fields[4], line_no);
    e.box.height = parse_double(fields[5], line_no);
    e.conf = parse_double(fields[6], line_no);
    if (e.frame < 1) {
      throw ParseError("frame index must be >= 1", line_no);
    }
    if (!e.box.positive_area()) {
      throw ParseError("box must have positive width and height", line_no);
    }
    switch (kind) {
      case MotFileKind::GroundTruth:
        e.cls = static_cast<int>(parse_int(fields[7], line_no));
        e.visibility = parse_double(fields[8], line_no);
        if (e.id < 1) {
          throw ParseError("ground-truth id must be >= 1", line_no);
        }
        break;
      case MotFileKind::Detections:
        if (e.id != -1) {
          throw ParseError("detection rows must carry id = -1", line_no);
        }
        break;
      case MotFileKind::Results:
        if (e.id < 1) {
          throw ParseError("result id must be >= 1", line_no);
        }
        break;
    }
    entries.push_back(e);
  }
  return entries;
}

std::vector<TrackEntry> parse_mot_file(const std::filesystem::path& path,
                                       MotFileKind kind) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  try {
    return parse_mot_file(in, kind);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.line_number);
  }
}

std::vector<Detection> to_detections(std::span<const TrackEntry> entries) {
  std::vector<Detection> out;
  out.reserve(entries.size());
  for (const TrackEntry& e : entries) {
    out.push_back(Detection{e.frame, e.box, e.conf});
  }
  return out;
}

void write_results(std::ostream& out, std::span<const TrackEntry> entries) {
  std::vector<const TrackEntry*> sorted;
  sorted.reserve(entries.size());
  for (const TrackEntry& e : entries) {
    sorted.push_back(&e);
  }
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const TrackEntry* a, const TrackEntry* b) {
                     return std::tie(a->frame, a->id) < std::tie(b->frame, b->id);
                   });
  std::set<std::pair<std::int64_t, std::int64_t>> seen;
  char buf[160];
  for (const TrackEntry* e : sorted) {
    if (!seen.emplace(e->frame, e->id).second) {
      throw ConsistencyError("duplicate (frame, id) pair: frame " +
                             std::to_string(e->frame) + ", id " +
                             std::to_string(e->id));
    }
    std::snprintf(buf, sizeof(buf), "%lld,%lld,%.2f,%.2f,%.2f,%.2f,1,-1,-1,-1\n",
                  static_cast<long long>(e->frame), static_cast<long long>(e->id),
                  e->box.left, e->box.top, e->box.width, e->box.height);
    out << buf;
  }
}

std::string results_to_string(std::span<const TrackEntry> entries) {
  std::ostringstream out;
  write_results(out, entries);
  return out.str();
}

void write_ground_truth(std::ostream& out, std::span<const TrackEntry> entries) {
  char buf[192];
  for (const TrackEntry& e : entries) {
    std::snprintf(buf, sizeof(buf), "%lld,%lld,%.2f,%.2f,%.2f,%.2f,%g,%d,%g\n",
                  static_cast<long long>(e.frame), static_cast<long long>(e.id),
                  e.box.left, e.box.top, e.box.width, e.box.height, e.conf, e.cls,
                  e.visibility);
    out << buf;
  }
}

void write_detections(std::ostream& out, std::span<const Detection> detections) {
  char buf[192];
  for (const Detection& d : detections) {
    std::snprintf(buf, sizeof(buf), "%lld,-1,%.2f,%.2f,%.2f,%.2f,%.4f,-1,-1,-1\n",
                  static_cast<long long>(d.frame), d.box.left, d.box.top, d.box.width,
                  d.box.height, d.confidence);
    out << buf;
  }
}

SequenceInfo parse_seqinfo(std::istream& in) {
  SequenceInfo info;
  std::string line;
  std::size_t line_no = 0;
  bool saw_width = false, saw_height = false, saw_len = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view v = trim(line);
    if (v.empty() || v.front() == '[' || v.front() == ';' || v.front() == '#') {
      continue;
    }
    const std::size_t eq = v.find('=');
    if (eq == std::string_view::npos) {
      continue;
    }
    const std::string key{trim(v.substr(0, eq))};
    const std::string_view value = trim(v.substr(eq + 1));
    if (key == "name") {
      info.name = std::string(value);
    } else if (key == "seqLength") {
      info.frame_count = static_cast<int>(parse_int(value, line_no));
      saw_len = true;
    } else if (key == "frameRate") {
      info.frame_rate = parse_double(value, line_no);
    } else if (key == "imWidth") {
      info.width = static_cast<int>(parse_int(value, line_no));
      saw_width = true;
    } else if (key == "imHeight") {
      info.height = static_cast<int>(parse_int(value, line_no));
      saw_height = true;
    }
  }
  if (!saw_width || !saw_height || !saw_len) {
    throw ParseError("seqinfo is missing imWidth/imHeight/seqLength", line_no);
  }
  if (info.width <= 0 || info.height <= 0 || info.frame_count <= 0) {
    throw ParseError("seqinfo dimensions must be positive", line_no);
  }
  return info;
}

Sequence load_sequence(const std::filesystem::path& dir) {
  const auto seqinfo_path = dir / "seqinfo.ini";
  std::ifstream seqinfo(seqinfo_path);
  if (!seqinfo) {
    throw IoError("cannot open " + seqinfo_path.string());
  }
  Sequence seq;
  seq.info = parse_seqinfo(seqinfo);
  if (seq.info.name.empty()) {
    seq.info.name = dir.filename().string();
  }

  const auto det_path = dir / "det" / "det.txt";
  if (!std::filesystem::exists(det_path)) {
    throw IoError("cannot open " + det_path.string());
  }
  seq.detections = to_detections(parse_mot_file(det_path, MotFileKind::Detections));

  const auto gt_path = dir / "gt" / "gt.txt";
  if (std::filesystem::exists(gt_path)) {
    seq.ground_truth = parse_mot_file(gt_path, MotFileKind::GroundTruth);
  }
  return seq;
}

}  // namespace motkit
