#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "motkit/box.hpp"

namespace motkit {

// Identity-free detection from a det.txt file or the simulator.
struct Detection {
  std::int64_t frame = 0;
  Box box;
  double confidence = 0.0;
};

// One row of a MOTChallenge annotation or result file. For ground truth the
// conf column carries the evaluation flag and cls/visibility are retained as
// read; the metrics module, not the parser, decides what counts.
struct TrackEntry {
  std::int64_t frame = 0;
  std::int64_t id = -1;
  Box box;
  double conf = 1.0;
  int cls = -1;
  double visibility = -1.0;
};

enum class MotFileKind { GroundTruth, Detections, Results };

// Column layouts: GroundTruth rows are
// frame,id,left,top,width,height,flag,class,visibility (9 columns);
// Detections and Results rows are
// frame,id,left,top,width,height,conf,x,y,z (10 columns), with id = -1
// required for detections. Anything else is a ParseError with line number.
std::vector<TrackEntry> parse_mot_file(std::istream& in, MotFileKind kind);
std::vector<TrackEntry> parse_mot_file(const std::filesystem::path& path,
                                       MotFileKind kind);

std::vector<Detection> to_detections(std::span<const TrackEntry> entries);

// Result emitter: one line per (frame, id), sorted by frame then id, box
// coordinates with 2 decimals, conf = 1, trailing -1,-1,-1. Round-trips
// through parse_mot_file exactly for coordinates on the 0.01 grid.
void write_results(std::ostream& out, std::span<const TrackEntry> entries);
std::string results_to_string(std::span<const TrackEntry> entries);

// Ground-truth (9-column) and detection (10-column) emitters, mainly for the
// simulator. Boxes use the same 2-decimal precision as write_results, so
// quarter-pixel-aligned boxes round-trip exactly.
void write_ground_truth(std::ostream& out, std::span<const TrackEntry> entries);
void write_detections(std::ostream& out, std::span<const Detection> detections);

struct SequenceInfo {
  std::string name;
  int frame_count = 0;
  double frame_rate = 0.0;
  int width = 0;
  int height = 0;

  FrameGeometry geometry() const { return FrameGeometry{width, height}; }
};

SequenceInfo parse_seqinfo(std::istream& in);

struct Sequence {
  SequenceInfo info;
  std::vector<Detection> detections;
  std::optional<std::vector<TrackEntry>> ground_truth;
};

// MOTChallenge directory convention: seqinfo.ini, det/det.txt, optional
// gt/gt.txt. Missing seqinfo or det file is an IoError naming the path.
Sequence load_sequence(const std::filesystem::path& dir);

}  // namespace motkit
