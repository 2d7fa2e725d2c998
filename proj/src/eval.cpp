#include "ctd/eval.hpp"

#include <cstdio>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "ctd/io.hpp"

namespace ctd {

using nlohmann::json;

namespace {

double ratio(double numerator, double denominator) {
  return denominator == 0.0 ? 0.0 : numerator / denominator;
}

double harmonic(double a, double b) { return a + b == 0.0 ? 0.0 : 2.0 * a * b / (a + b); }

double class_f1(double tp, double fp, double fn) {
  return harmonic(ratio(tp, tp + fp), ratio(tp, tp + fn));
}

std::string fixed(double value, int digits = 3) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", digits, value);
  return buffer;
}

// Maps post_id -> gold label, rejecting unlabeled and duplicate posts.
std::unordered_map<std::string_view, const Post*> index_gold(std::span<const Post> gold) {
  std::unordered_map<std::string_view, const Post*> index;
  for (const auto& post : gold) {
    if (!post.gold_label) throw DataError("post \"" + post.post_id + "\" has no gold label");
    if (!index.emplace(post.post_id, &post).second) {
      throw DataError("duplicate gold post \"" + post.post_id + "\"");
    }
  }
  return index;
}

// Pairs each verdict with its gold post; both sides must cover exactly the same ids.
std::vector<std::pair<const StanceVerdict*, const Post*>> align(
    std::span<const StanceVerdict> verdicts, std::span<const Post> gold) {
  const auto index = index_gold(gold);
  std::vector<std::pair<const StanceVerdict*, const Post*>> aligned;
  aligned.reserve(verdicts.size());
  std::unordered_set<std::string_view> seen;
  for (const auto& verdict : verdicts) {
    const auto it = index.find(verdict.post_id);
    if (it == index.end()) {
      throw DataError("verdict for unknown post \"" + verdict.post_id + "\"");
    }
    if (!seen.insert(verdict.post_id).second) {
      throw DataError("duplicate verdict for post \"" + verdict.post_id + "\"");
    }
    aligned.emplace_back(&verdict, it->second);
  }
  if (aligned.size() != gold.size()) {
    for (const auto& post : gold) {
      if (!seen.contains(post.post_id)) {
        throw DataError("no verdict for post \"" + post.post_id + "\"");
      }
    }
  }
  return aligned;
}

ClaimMetrics claim_metrics(const ConfusionCounts& counts) {
  return ClaimMetrics{metrics(counts), weighted_f1(counts), counts};
}

}  // namespace

std::string_view to_string(AbstainPolicy policy) {
  switch (policy) {
    case AbstainPolicy::kTreatAsRefute:
      return "treat_as_refute";
    case AbstainPolicy::kTreatAsSupport:
      return "treat_as_support";
    case AbstainPolicy::kDrop:
      return "drop";
  }
  return "treat_as_refute";
}

std::optional<AbstainPolicy> parse_abstain_policy(std::string_view token) {
  for (auto policy :
       {AbstainPolicy::kTreatAsRefute, AbstainPolicy::kTreatAsSupport, AbstainPolicy::kDrop}) {
    if (to_string(policy) == token) return policy;
  }
  return std::nullopt;
}

std::optional<StanceLabel> resolve(Prediction predicted, AbstainPolicy policy) {
  switch (predicted) {
    case Prediction::kSupportsConsensus:
      return StanceLabel::kSupportsConsensus;
    case Prediction::kRefutesConsensus:
      return StanceLabel::kRefutesConsensus;
    case Prediction::kAbstain:
      break;
  }
  switch (policy) {
    case AbstainPolicy::kTreatAsRefute:
      return StanceLabel::kRefutesConsensus;
    case AbstainPolicy::kTreatAsSupport:
      return StanceLabel::kSupportsConsensus;
    case AbstainPolicy::kDrop:
      break;
  }
  return std::nullopt;
}

ConfusionCounts& ConfusionCounts::operator+=(const ConfusionCounts& other) {
  tp += other.tp;
  fp += other.fp;
  tn += other.tn;
  fn += other.fn;
  abstain_count += other.abstain_count;
  return *this;
}

json ConfusionCounts::to_json() const {
  return {{"tp", tp}, {"fp", fp}, {"tn", tn}, {"fn", fn}, {"abstain", abstain_count}};
}

void tally(ConfusionCounts& counts, StanceLabel predicted, StanceLabel gold) {
  const bool predicted_positive = predicted == StanceLabel::kRefutesConsensus;
  const bool gold_positive = gold == StanceLabel::kRefutesConsensus;
  if (predicted_positive) {
    ++(gold_positive ? counts.tp : counts.fp);
  } else {
    ++(gold_positive ? counts.fn : counts.tn);
  }
}

ConfusionCounts confusion(std::span<const StanceVerdict> verdicts, std::span<const Post> gold,
                          AbstainPolicy policy) {
  ConfusionCounts counts;
  for (const auto& [verdict, post] : align(verdicts, gold)) {
    if (verdict->predicted == Prediction::kAbstain) ++counts.abstain_count;
    if (const auto effective = resolve(verdict->predicted, policy)) {
      tally(counts, *effective, *post->gold_label);
    }
  }
  return counts;
}

json MetricRecord::to_json() const {
  return {{"precision", precision},
          {"recall", recall},
          {"f1_positive", f1_positive},
          {"fdr", fdr},
          {"fnr", fnr}};
}

MetricRecord metrics(const ConfusionCounts& counts) {
  const auto tp = static_cast<double>(counts.tp);
  const auto fp = static_cast<double>(counts.fp);
  const auto fn = static_cast<double>(counts.fn);
  MetricRecord m;
  m.precision = ratio(tp, tp + fp);
  m.recall = ratio(tp, tp + fn);
  m.f1_positive = harmonic(m.precision, m.recall);
  m.fdr = ratio(fp, fp + tp);
  m.fnr = ratio(fn, fn + tp);
  return m;
}

double weighted_f1(const ConfusionCounts& counts) {
  const auto tp = static_cast<double>(counts.tp);
  const auto fp = static_cast<double>(counts.fp);
  const auto tn = static_cast<double>(counts.tn);
  const auto fn = static_cast<double>(counts.fn);
  const double refute_support = tp + fn;
  const double support_support = tn + fp;
  const double total = refute_support + support_support;
  if (total == 0.0) return 0.0;
  // The support class's true positives are the refute class's true negatives.
  return (refute_support * class_f1(tp, fp, fn) + support_support * class_f1(tn, fn, fp)) /
         total;
}

double weighted_f1(std::span<const StanceVerdict> verdicts, std::span<const Post> gold) {
  if (verdicts.empty()) throw DataError("weighted F1 of an empty verdict set");
  const auto aligned = align(verdicts, gold);

  double result = 0.0;
  for (const auto label : {StanceLabel::kSupportsConsensus, StanceLabel::kRefutesConsensus}) {
    const auto as_prediction = to_prediction(label);
    double tp = 0, fp = 0, fn = 0, support = 0;
    for (const auto& [verdict, post] : aligned) {
      const bool is_gold = *post->gold_label == label;
      const bool is_predicted = verdict->predicted == as_prediction;
      support += is_gold;
      tp += is_gold && is_predicted;
      fp += !is_gold && is_predicted;
      fn += is_gold && !is_predicted;
    }
    result += support * class_f1(tp, fp, fn);
  }
  return result / static_cast<double>(aligned.size());
}

json ClaimMetrics::to_json() const {
  json record = metrics.to_json();
  record["f1_weighted"] = f1_weighted;
  record["counts"] = counts.to_json();
  return record;
}

json EvalReport::to_json() const {
  json claims = json::object();
  for (const auto& [claim_id, m] : per_claim) claims[claim_id] = m.to_json();
  return {{"per_claim", claims}, {"aggregate", aggregate.to_json()}};
}

std::string EvalReport::per_claim_jsonl() const {
  std::string out;
  for (const auto& [claim_id, m] : per_claim) {
    json record = m.to_json();
    record["claim_id"] = claim_id;
    io::append_jsonl(out, record);
  }
  return out;
}

std::string EvalReport::to_table() const {
  std::ostringstream out;
  out << "| Claim | Precision | Recall | F1 | Weighted F1 | FDR | FNR | Abstain |\n"
      << "|---|---|---|---|---|---|---|---|\n";
  const auto row = [&out](std::string_view name, const ClaimMetrics& m) {
    out << "| " << name << " | " << fixed(m.metrics.precision) << " | "
        << fixed(m.metrics.recall) << " | " << fixed(m.metrics.f1_positive) << " | "
        << fixed(m.f1_weighted) << " | " << fixed(m.metrics.fdr) << " | "
        << fixed(m.metrics.fnr) << " | " << m.counts.abstain_count << " |\n";
  };
  for (const auto& [claim_id, m] : per_claim) row(claim_id, m);
  row("mean", aggregate);
  return out.str();
}

EvalReport evaluate(std::span<const StanceVerdict> verdicts, std::span<const Post> gold,
                    AbstainPolicy policy) {
  std::map<std::string, ConfusionCounts> counts_by_claim;
  for (const auto& post : gold) counts_by_claim.try_emplace(post.claim_id);
  for (const auto& [verdict, post] : align(verdicts, gold)) {
    auto& counts = counts_by_claim[post->claim_id];
    if (verdict->predicted == Prediction::kAbstain) ++counts.abstain_count;
    if (const auto effective = resolve(verdict->predicted, policy)) {
      tally(counts, *effective, *post->gold_label);
    }
  }

  EvalReport report;
  if (counts_by_claim.empty()) return report;
  for (const auto& [claim_id, counts] : counts_by_claim) {
    const auto m = claim_metrics(counts);
    report.per_claim.emplace(claim_id, m);
    report.aggregate.counts += counts;
    report.aggregate.metrics.precision += m.metrics.precision;
    report.aggregate.metrics.recall += m.metrics.recall;
    report.aggregate.metrics.f1_positive += m.metrics.f1_positive;
    report.aggregate.metrics.fdr += m.metrics.fdr;
    report.aggregate.metrics.fnr += m.metrics.fnr;
    report.aggregate.f1_weighted += m.f1_weighted;
  }
  const auto n = static_cast<double>(counts_by_claim.size());
  auto& mean = report.aggregate.metrics;
  mean.precision /= n;
  mean.recall /= n;
  mean.f1_positive /= n;
  mean.fdr /= n;
  mean.fnr /= n;
  report.aggregate.f1_weighted /= n;
  return report;
}

double CrossClaimMatrix::at(std::string_view train_claim, std::string_view eval_claim) const {
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r] != train_claim) continue;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (cols[c] == eval_claim) return cells[r][c];
    }
  }
  throw DataError("no cell (" + std::string(train_claim) + ", " + std::string(eval_claim) + ")");
}

std::string CrossClaimMatrix::to_csv() const {
  std::ostringstream out;
  out << "train_claim";
  for (const auto& col : cols) out << ',' << col;
  out << '\n';
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out << rows[r];
    for (const double cell : cells[r]) out << ',' << fixed(cell, 6);
    out << '\n';
  }
  return out.str();
}

std::string CrossClaimMatrix::to_table() const {
  std::ostringstream out;
  out << "| Train \\ Eval |";
  for (const auto& col : cols) out << ' ' << col << " |";
  out << "\n|---|";
  for (std::size_t c = 0; c < cols.size(); ++c) out << "---|";
  out << '\n';
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out << "| " << rows[r] << " |";
    for (const double cell : cells[r]) out << ' ' << fixed(cell) << " |";
    out << '\n';
  }
  return out.str();
}

CrossClaimMatrix cross_claim_matrix(const ClaimRunGrid& runs) {
  std::set<std::string> rows;
  std::set<std::string> cols;
  for (const auto& [key, run] : runs) {
    rows.insert(key.first);
    cols.insert(key.second);
  }

  CrossClaimMatrix matrix;
  matrix.rows.assign(rows.begin(), rows.end());
  matrix.cols.assign(cols.begin(), cols.end());

  std::string gaps;
  for (const auto& row : matrix.rows) {
    for (const auto& col : matrix.cols) {
      if (!runs.contains({row, col})) {
        if (!gaps.empty()) gaps += ", ";
        gaps += "(" + row + ", " + col + ")";
      }
    }
  }
  if (!gaps.empty()) throw DataError("cross-claim grid is missing runs: " + gaps);

  for (const auto& row : matrix.rows) {
    auto& cells = matrix.cells.emplace_back();
    for (const auto& col : matrix.cols) {
      const auto& run = runs.at({row, col});
      cells.push_back(weighted_f1(run.verdicts, run.gold));
    }
  }
  return matrix;
}

}  // namespace ctd
