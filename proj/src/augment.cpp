#include "motkit/augment.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

namespace motkit {

namespace {

Box draw_jittered(const Box& base, const JitterConfig& config, Rng& rng) {
  const double dx = rng.uniform(-config.max_center_shift, config.max_center_shift) *
                    base.width;
  const double dy = rng.uniform(-config.max_center_shift, config.max_center_shift) *
                    base.height;
  const double sw = 1.0 + rng.uniform(-config.max_scale_change, config.max_scale_change);
  const double sh = 1.0 + rng.uniform(-config.max_scale_change, config.max_scale_change);
  if (dx == 0.0 && dy == 0.0 && sw == 1.0 && sh == 1.0) {
    return base;
  }
  return Box::from_cxcywh(base.cx() + dx, base.cy() + dy, base.width * sw,
                          base.height * sh);
}

std::optional<Box> clamp_to_frame(const Box& box, const FrameGeometry& frame) {
  const double l = std::max(box.left, 0.0);
  const double t = std::max(box.top, 0.0);
  const double r = std::min(box.right(), static_cast<double>(frame.width));
  const double b = std::min(box.bottom(), static_cast<double>(frame.height));
  if (r <= l || b <= t) {
    return std::nullopt;
  }
  return Box{l, t, r - l, b - t};
}

}  // namespace

Box jitter_candidate(const Box& gt_box_prev, const std::optional<Box>& gt_box_curr,
                     const JitterConfig& config, Rng& rng) {
  config.validate();
  if (!gt_box_prev.positive_area() ||
      (gt_box_curr && !gt_box_curr->positive_area())) {
    throw InvalidBoxError("jitter needs positive-area boxes");
  }
  for (int attempt = 0; attempt < config.max_attempts; ++attempt) {
    const Box candidate = draw_jittered(gt_box_prev, config, rng);
    if (!gt_box_curr || iou(candidate, *gt_box_curr) >= config.min_iou_keep) {
      return candidate;
    }
  }
  return gt_box_prev;
}

std::optional<Box> inject_false_positive(std::span<const Box> all_gt_boxes_curr,
                                         const FrameGeometry& frame,
                                         const JitterConfig& config, Rng& rng) {
  config.validate();
  if (frame.width <= 0 || frame.height <= 0) {
    throw DomainError("frame dimensions must be positive");
  }
  const double frame_w = frame.width;
  const double frame_h = frame.height;
  for (int attempt = 0; attempt < config.max_attempts; ++attempt) {
    double w, h;
    if (all_gt_boxes_curr.empty()) {
      w = rng.uniform(0.05, 0.4) * frame_w;
      h = rng.uniform(0.05, 0.4) * frame_h;
    } else {
      const Box& base = all_gt_boxes_curr[rng.uniform_int(all_gt_boxes_curr.size())];
      w = base.width * (1.0 + rng.uniform(-config.max_scale_change,
                                          config.max_scale_change));
      h = base.height * (1.0 + rng.uniform(-config.max_scale_change,
                                           config.max_scale_change));
    }
    w = std::min(w, frame_w);
    h = std::min(h, frame_h);
    const Box candidate{rng.uniform(0.0, frame_w - w), rng.uniform(0.0, frame_h - h),
                        w, h};
    const bool clear = std::all_of(
        all_gt_boxes_curr.begin(), all_gt_boxes_curr.end(),
        [&](const Box& gt) { return iou(candidate, gt) < config.min_iou_keep; });
    if (clear) {
      return candidate;
    }
  }
  return std::nullopt;
}

std::vector<std::int64_t> remove_false_negatives(
    std::span<const std::int64_t> persisting_ids, double drop_prob, Rng& rng) {
  if (drop_prob < 0.0 || drop_prob > 1.0) {
    throw DomainError("drop probability must lie in [0, 1]");
  }
  std::vector<std::int64_t> removed;
  for (const std::int64_t id : persisting_ids) {
    if (rng.bernoulli(drop_prob)) {
      removed.push_back(id);
    }
  }
  return removed;
}

std::pair<std::vector<IdBox>, std::vector<IdBox>> synthesize_pair_from_image(
    std::span<const IdBox> gt_boxes, const FrameGeometry& frame,
    const PairSynthConfig& config, Rng& rng) {
  config.validate();
  if (frame.width <= 0 || frame.height <= 0) {
    throw DomainError("frame dimensions must be positive");
  }
  const auto make_view = [&]() {
    const double scale = rng.uniform(config.scale_min, config.scale_max);
    const double tx = rng.uniform(-config.max_translate_frac, config.max_translate_frac) *
                      frame.width;
    const double ty = rng.uniform(-config.max_translate_frac, config.max_translate_frac) *
                      frame.height;
    std::vector<IdBox> view;
    for (const IdBox& g : gt_boxes) {
      Box moved;
      if (scale == 1.0 && tx == 0.0 && ty == 0.0) {
        moved = g.box;
      } else {
        moved = Box{g.box.left * scale + tx, g.box.top * scale + ty,
                    g.box.width * scale, g.box.height * scale};
      }
      if (const auto clamped = clamp_to_frame(moved, frame)) {
        view.push_back(IdBox{g.id, *clamped});
      }
    }
    return view;
  };
  auto first = make_view();
  auto second = make_view();
  return {std::move(first), std::move(second)};
}

std::pair<std::int64_t, std::int64_t> select_frame_pair(std::int64_t sequence_length,
                                                        int max_gap, Rng& rng) {
  if (max_gap < 1) {
    throw DomainError("max gap must be >= 1");
  }
  if (sequence_length < 2) {
    throw DomainError("sequence too short to form a frame pair");
  }
  const std::int64_t gap_limit =
      std::min<std::int64_t>(max_gap, sequence_length - 1);
  const std::int64_t gap = 1 + static_cast<std::int64_t>(
                                   rng.uniform_int(static_cast<std::uint64_t>(gap_limit)));
  const std::int64_t k =
      gap + 1 +
      static_cast<std::int64_t>(
          rng.uniform_int(static_cast<std::uint64_t>(sequence_length - gap)));
  return {k - gap, k};
}

TrainingSample make_training_sample(std::span<const IdBox> prev_tracks,
                                    std::span<const IdBox> curr_tracks,
                                    const FrameGeometry& frame,
                                    const AugmentConfig& config,
                                    std::uint64_t sample_seed, std::string source) {
  config.validate();
  Rng rng(sample_seed);

  std::map<std::int64_t, Box> curr_by_id;
  for (const IdBox& t : curr_tracks) {
    curr_by_id.emplace(t.id, t.box);
  }
  std::vector<std::int64_t> persisting;
  for (const IdBox& t : prev_tracks) {
    if (curr_by_id.contains(t.id)) {
      persisting.push_back(t.id);
    }
  }
  std::sort(persisting.begin(), persisting.end());

  TrainingSample sample;
  sample.prev_tracks.assign(prev_tracks.begin(), prev_tracks.end());
  sample.curr_tracks.assign(curr_tracks.begin(), curr_tracks.end());
  sample.removed_ids = remove_false_negatives(persisting, config.drop_prob, rng);
  std::set<std::int64_t> removed(sample.removed_ids.begin(), sample.removed_ids.end());

  for (const IdBox& t : prev_tracks) {
    if (removed.contains(t.id)) {
      continue;
    }
    std::optional<Box> curr;
    if (const auto it = curr_by_id.find(t.id); it != curr_by_id.end()) {
      curr = it->second;
    }
    const Box candidate = jitter_candidate(t.box, curr, config.jitter, rng);
    if (curr && iou(candidate, *curr) < config.jitter.min_iou_keep) {
      // Even the unjittered box misses the object's new location; the query
      // cannot be a valid candidate, so the id becomes an injected FN.
      removed.insert(t.id);
      continue;
    }
    sample.candidates.push_back(IdBox{t.id, candidate});
  }
  sample.removed_ids.assign(removed.begin(), removed.end());

  std::vector<Box> gt_curr;
  gt_curr.reserve(curr_tracks.size());
  for (const IdBox& t : curr_tracks) {
    gt_curr.push_back(t.box);
  }
  const std::uint64_t fp_count =
      config.max_false_positives > 0
          ? rng.uniform_int(static_cast<std::uint64_t>(config.max_false_positives) + 1)
          : 0;
  for (std::uint64_t i = 0; i < fp_count; ++i) {
    if (const auto fp = inject_false_positive(gt_curr, frame, config.jitter, rng)) {
      sample.false_positives.push_back(*fp);
    }
  }

  sample.source = std::move(source);
  sample.seed = sample_seed;
  return sample;
}

namespace {

nlohmann::json box_json(const Box& b) {
  return nlohmann::json::array({b.left, b.top, b.width, b.height});
}

Box box_from_json(const nlohmann::json& j) {
  return Box{j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>(),
             j.at(3).get<double>()};
}

nlohmann::json idboxes_json(const std::vector<IdBox>& boxes) {
  nlohmann::json arr = nlohmann::json::array();
  for (const IdBox& b : boxes) {
    arr.push_back({{"id", b.id}, {"box", box_json(b.box)}});
  }
  return arr;
}

std::vector<IdBox> idboxes_from_json(const nlohmann::json& arr) {
  std::vector<IdBox> out;
  for (const auto& item : arr) {
    out.push_back(IdBox{item.at("id").get<std::int64_t>(),
                        box_from_json(item.at("box"))});
  }
  return out;
}

}  // namespace

std::string serialize_sample(const TrainingSample& sample) {
  nlohmann::json j;
  j["source"] = sample.source;
  j["seed"] = sample.seed;
  j["prev_tracks"] = idboxes_json(sample.prev_tracks);
  j["curr_tracks"] = idboxes_json(sample.curr_tracks);
  j["candidates"] = idboxes_json(sample.candidates);
  nlohmann::json fps = nlohmann::json::array();
  for (const Box& b : sample.false_positives) {
    fps.push_back(box_json(b));
  }
  j["false_positives"] = std::move(fps);
  j["removed_ids"] = sample.removed_ids;
  return j.dump();
}

TrainingSample parse_sample(const std::string& line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad sample line: ") + e.what(), 1);
  }
  TrainingSample s;
  s.source = j.at("source").get<std::string>();
  s.seed = j.at("seed").get<std::uint64_t>();
  s.prev_tracks = idboxes_from_json(j.at("prev_tracks"));
  s.curr_tracks = idboxes_from_json(j.at("curr_tracks"));
  s.candidates = idboxes_from_json(j.at("candidates"));
  for (const auto& b : j.at("false_positives")) {
    s.false_positives.push_back(box_from_json(b));
  }
  s.removed_ids = j.at("removed_ids").get<std::vector<std::int64_t>>();
  return s;
}

void validate_sample(const TrainingSample& sample) {
  std::map<std::int64_t, Box> prev_by_id, curr_by_id;
  for (const IdBox& t : sample.prev_tracks) {
    prev_by_id.emplace(t.id, t.box);
  }
  for (const IdBox& t : sample.curr_tracks) {
    curr_by_id.emplace(t.id, t.box);
  }
  const std::set<std::int64_t> removed(sample.removed_ids.begin(),
                                       sample.removed_ids.end());

  for (const std::int64_t id : sample.removed_ids) {
    if (!prev_by_id.contains(id) || !curr_by_id.contains(id)) {
      throw ConsistencyError("removed id " + std::to_string(id) +
                             " is not a persisting track");
    }
  }
  for (const IdBox& c : sample.candidates) {
    if (!prev_by_id.contains(c.id)) {
      throw ConsistencyError("candidate id " + std::to_string(c.id) +
                             " has no previous-frame track");
    }
    if (removed.contains(c.id)) {
      throw ConsistencyError("candidate id " + std::to_string(c.id) +
                             " was removed as a false negative");
    }
    if (const auto it = curr_by_id.find(c.id); it != curr_by_id.end()) {
      if (iou(c.box, it->second) < 0.5) {
        throw ConsistencyError("candidate id " + std::to_string(c.id) +
                               " has IoU < 0.5 with its current box");
      }
    }
  }
  for (std::size_t i = 0; i < sample.false_positives.size(); ++i) {
    for (const auto& [id, box] : curr_by_id) {
      if (iou(sample.false_positives[i], box) >= 0.5) {
        throw ConsistencyError("false positive " + std::to_string(i) +
                               " has IoU >= 0.5 with track " + std::to_string(id));
      }
    }
  }
}

}  // namespace motkit
