#include "motkit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "motkit/assign.hpp"
#include "motkit/kernels.hpp"

namespace motkit {

namespace {

std::vector<double> overlap_matrix(std::span<const IdBoxRef> a,
                                   std::span<const IdBoxRef> b) {
  kernels::BoxArray ba, bb;
  ba.reserve(a.size());
  bb.reserve(b.size());
  for (const IdBoxRef& x : a) ba.push_back(x.box);
  for (const IdBoxRef& x : b) bb.push_back(x.box);
  std::vector<double> out(a.size() * b.size());
  if (!out.empty()) {
    kernels::iou_matrix(ba, bb, out.data());
  }
  return out;
}

bool evaluated_gt(const TrackEntry& e) { return e.cls == 1 && e.conf != 0.0; }

struct FrameSlice {
  std::vector<IdBoxRef> eval_gt;
  std::vector<IdBoxRef> ignore_gt;
  std::vector<IdBoxRef> hyp;
};

std::map<std::int64_t, FrameSlice> slice_frames(std::span<const TrackEntry> gt,
                                                std::span<const TrackEntry> results) {
  std::map<std::int64_t, FrameSlice> frames;
  for (const TrackEntry& e : gt) {
    auto& slice = frames[e.frame];
    (evaluated_gt(e) ? slice.eval_gt : slice.ignore_gt)
        .push_back(IdBoxRef{e.id, e.box});
  }
  for (const TrackEntry& e : results) {
    frames[e.frame].hyp.push_back(IdBoxRef{e.id, e.box});
  }
  return frames;
}

}  // namespace

FrameCorrespondence clear_match(const FrameCorrespondence& prev,
                                std::span<const IdBoxRef> gt,
                                std::span<const IdBoxRef> hyp, double threshold) {
  FrameCorrespondence cur;
  cur.last_hyp = prev.last_hyp;

  const std::vector<double> overlap = overlap_matrix(gt, hyp);
  const std::size_t cols = hyp.size();
  auto iou_at = [&](std::size_t g, std::size_t h) { return overlap[g * cols + h]; };

  std::vector<char> gt_done(gt.size(), 0);
  std::vector<char> hyp_done(hyp.size(), 0);

  // Keep persisting pairs first; they bypass the assignment.
  for (std::size_t g = 0; g < gt.size(); ++g) {
    const auto last = cur.last_hyp.find(gt[g].id);
    if (last == cur.last_hyp.end()) {
      continue;
    }
    for (std::size_t h = 0; h < hyp.size(); ++h) {
      if (!hyp_done[h] && hyp[h].id == last->second && iou_at(g, h) >= threshold) {
        cur.matched[gt[g].id] = hyp[h].id;
        gt_done[g] = 1;
        hyp_done[h] = 1;
        break;
      }
    }
  }

  std::vector<std::size_t> free_gt, free_hyp;
  for (std::size_t g = 0; g < gt.size(); ++g) {
    if (!gt_done[g]) free_gt.push_back(g);
  }
  for (std::size_t h = 0; h < hyp.size(); ++h) {
    if (!hyp_done[h]) free_hyp.push_back(h);
  }

  if (!free_gt.empty() && !free_hyp.empty()) {
    CostMatrix costs = CostMatrix::zeros(static_cast<int>(free_gt.size()),
                                         static_cast<int>(free_hyp.size()));
    for (std::size_t r = 0; r < free_gt.size(); ++r) {
      for (std::size_t c = 0; c < free_hyp.size(); ++c) {
        costs.at(static_cast<int>(r), static_cast<int>(c)) =
            1.0 - iou_at(free_gt[r], free_hyp[c]);
      }
    }
    for (const auto& [r, c] : solve_assignment(costs).pairs) {
      const std::size_t g = free_gt[r];
      const std::size_t h = free_hyp[c];
      if (iou_at(g, h) < threshold) {
        continue;
      }
      const std::int64_t gt_id = gt[g].id;
      const std::int64_t hyp_id = hyp[h].id;
      const auto last = cur.last_hyp.find(gt_id);
      if (last != cur.last_hyp.end() && last->second != hyp_id) {
        ++cur.switches;
      }
      cur.matched[gt_id] = hyp_id;
      gt_done[g] = 1;
      hyp_done[h] = 1;
    }
  }

  for (const auto& [gt_id, hyp_id] : cur.matched) {
    cur.last_hyp[gt_id] = hyp_id;
  }
  for (std::size_t g = 0; g < gt.size(); ++g) {
    if (!gt_done[g]) cur.unmatched_gt.push_back(gt[g].id);
  }
  for (std::size_t h = 0; h < hyp.size(); ++h) {
    if (!hyp_done[h]) cur.unmatched_hyp.push_back(hyp[h].id);
  }
  return cur;
}

ClearCounts compute_clear(std::span<const TrackEntry> gt,
                          std::span<const TrackEntry> results, double threshold) {
  const auto frames = slice_frames(gt, results);

  ClearCounts counts;
  std::map<std::int64_t, std::int64_t> traj_frames, traj_matched;
  FrameCorrespondence corr;

  for (const auto& [frame, slice] : frames) {
    counts.gt_total += static_cast<std::int64_t>(slice.eval_gt.size());
    for (const IdBoxRef& g : slice.eval_gt) {
      ++traj_frames[g.id];
    }

    FrameCorrespondence next = clear_match(corr, slice.eval_gt, slice.hyp, threshold);

    counts.fn += static_cast<std::int64_t>(next.unmatched_gt.size());
    counts.idsw += next.switches;
    counts.matches += static_cast<std::int64_t>(next.matched.size());
    for (const auto& [gt_id, hyp_id] : next.matched) {
      ++traj_matched[gt_id];
    }

    // Hypotheses overlapping an ignored ground-truth box are not counted as
    // false positives (distractor convention).
    for (const std::int64_t hyp_id : next.unmatched_hyp) {
      const auto hyp_it =
          std::find_if(slice.hyp.begin(), slice.hyp.end(),
                       [&](const IdBoxRef& h) { return h.id == hyp_id; });
      bool ignored = false;
      for (const IdBoxRef& ig : slice.ignore_gt) {
        if (iou(hyp_it->box, ig.box) >= threshold) {
          ignored = true;
          break;
        }
      }
      if (!ignored) {
        ++counts.fp;
      }
    }
    corr = std::move(next);
  }

  if (counts.gt_total == 0) {
    throw UndefinedMetricError("MOTA is undefined without ground-truth boxes");
  }

  counts.gt_trajectories = static_cast<int>(traj_frames.size());
  for (const auto& [id, present] : traj_frames) {
    const double ratio = static_cast<double>(traj_matched[id]) / present;
    if (ratio >= 0.8) {
      ++counts.mt;
    } else if (ratio <= 0.2) {
      ++counts.ml;
    }
  }
  counts.mota = 1.0 - static_cast<double>(counts.fp + counts.fn + counts.idsw) /
                          static_cast<double>(counts.gt_total);
  return counts;
}

IdCounts compute_idf1(std::span<const TrackEntry> gt,
                      std::span<const TrackEntry> results, double threshold) {
  const auto frames = slice_frames(gt, results);

  std::map<std::int64_t, int> gt_index, hyp_index;
  std::int64_t gt_boxes = 0, hyp_boxes = 0;
  for (const auto& [frame, slice] : frames) {
    for (const IdBoxRef& g : slice.eval_gt) {
      gt_index.emplace(g.id, static_cast<int>(gt_index.size()));
      ++gt_boxes;
    }
    for (const IdBoxRef& h : slice.hyp) {
      hyp_index.emplace(h.id, static_cast<int>(hyp_index.size()));
      ++hyp_boxes;
    }
  }
  if (gt_boxes == 0) {
    throw UndefinedMetricError("IDF1 is undefined without ground-truth boxes");
  }

  // benefit[g][h] = number of frames where the two ids overlap at threshold.
  std::vector<std::int64_t> benefit(gt_index.size() * hyp_index.size(), 0);
  for (const auto& [frame, slice] : frames) {
    if (slice.eval_gt.empty() || slice.hyp.empty()) {
      continue;
    }
    const std::vector<double> overlap = overlap_matrix(slice.eval_gt, slice.hyp);
    for (std::size_t g = 0; g < slice.eval_gt.size(); ++g) {
      for (std::size_t h = 0; h < slice.hyp.size(); ++h) {
        if (overlap[g * slice.hyp.size() + h] >= threshold) {
          ++benefit[static_cast<std::size_t>(gt_index[slice.eval_gt[g].id]) *
                        hyp_index.size() +
                    hyp_index[slice.hyp[h].id]];
        }
      }
    }
  }

  CostMatrix costs = CostMatrix::zeros(static_cast<int>(gt_index.size()),
                                       static_cast<int>(hyp_index.size()));
  for (std::size_t k = 0; k < benefit.size(); ++k) {
    costs.costs[k] = -static_cast<double>(benefit[k]);
  }

  IdCounts counts;
  if (!hyp_index.empty()) {
    for (const auto& [g, h] : solve_assignment(costs).pairs) {
      counts.idtp += benefit[static_cast<std::size_t>(g) * hyp_index.size() + h];
    }
  }
  counts.idfn = gt_boxes - counts.idtp;
  counts.idfp = hyp_boxes - counts.idtp;
  counts.idf1 = 2.0 * static_cast<double>(counts.idtp) /
                static_cast<double>(2 * counts.idtp + counts.idfp + counts.idfn);
  return counts;
}

MetricReport evaluate_sequences(std::span<const SequencePair> sequences,
                                double threshold) {
  MetricReport report;
  std::int64_t idtp = 0, idfp = 0, idfn = 0;
  for (const SequencePair& seq : sequences) {
    SequenceMetrics m;
    m.name = seq.name;
    m.clear = compute_clear(seq.gt, seq.results, threshold);
    m.id = compute_idf1(seq.gt, seq.results, threshold);
    report.fp += m.clear.fp;
    report.fn += m.clear.fn;
    report.idsw += m.clear.idsw;
    report.gt_total += m.clear.gt_total;
    report.mt += m.clear.mt;
    report.ml += m.clear.ml;
    idtp += m.id.idtp;
    idfp += m.id.idfp;
    idfn += m.id.idfn;
    report.per_sequence.push_back(std::move(m));
  }
  if (report.gt_total == 0) {
    throw UndefinedMetricError("no ground truth across sequences");
  }
  report.mota = 1.0 - static_cast<double>(report.fp + report.fn + report.idsw) /
                          static_cast<double>(report.gt_total);
  report.idf1 =
      2.0 * static_cast<double>(idtp) / static_cast<double>(2 * idtp + idfp + idfn);
  return report;
}

namespace {

void append_row(std::string& out, const std::string& name, double mota, double idf1,
                std::int64_t fp, std::int64_t fn, std::int64_t idsw, int mt, int ml,
                std::int64_t gt_total) {
  char buf[200];
  std::snprintf(buf, sizeof(buf), "%-16s %7.3f %7.3f %8lld %8lld %6lld %5d %5d %9lld\n",
                name.c_str(), mota, idf1, static_cast<long long>(fp),
                static_cast<long long>(fn), static_cast<long long>(idsw), mt, ml,
                static_cast<long long>(gt_total));
  out += buf;
}

}  // namespace

std::string report_table(const MetricReport& report) {
  std::string out;
  char header[200];
  std::snprintf(header, sizeof(header), "%-16s %7s %7s %8s %8s %6s %5s %5s %9s\n",
                "sequence", "MOTA", "IDF1", "FP", "FN", "IDsw", "MT", "ML", "GT");
  out += header;
  for (const SequenceMetrics& m : report.per_sequence) {
    append_row(out, m.name, m.clear.mota, m.id.idf1, m.clear.fp, m.clear.fn,
               m.clear.idsw, m.clear.mt, m.clear.ml, m.clear.gt_total);
  }
  append_row(out, "OVERALL", report.mota, report.idf1, report.fp, report.fn,
             report.idsw, report.mt, report.ml, report.gt_total);
  return out;
}

std::string report_key_values(const MetricReport& report) {
  std::ostringstream out;
  const auto emit = [&out](const std::string& prefix, double mota, double idf1,
                           std::int64_t fp, std::int64_t fn, std::int64_t idsw,
                           int mt, int ml, std::int64_t gt_total) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", mota);
    out << prefix << ".mota = " << buf << "\n";
    std::snprintf(buf, sizeof(buf), "%.6f", idf1);
    out << prefix << ".idf1 = " << buf << "\n";
    out << prefix << ".fp = " << fp << "\n";
    out << prefix << ".fn = " << fn << "\n";
    out << prefix << ".idsw = " << idsw << "\n";
    out << prefix << ".mt = " << mt << "\n";
    out << prefix << ".ml = " << ml << "\n";
    out << prefix << ".gt = " << gt_total << "\n";
  };
  for (const SequenceMetrics& m : report.per_sequence) {
    emit("seq." + m.name, m.clear.mota, m.id.idf1, m.clear.fp, m.clear.fn,
         m.clear.idsw, m.clear.mt, m.clear.ml, m.clear.gt_total);
  }
  emit("overall", report.mota, report.idf1, report.fp, report.fn, report.idsw,
       report.mt, report.ml, report.gt_total);
  return out.str();
}

}  // namespace motkit
