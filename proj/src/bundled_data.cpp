// Machine data transcribed from published TOP500 analysis figures (lists of
// 2000, 2016 and mid-2017). Values are kept exactly as printed.

#include <algorithm>
#include <array>

#include "effpar/errors.hpp"
#include "effpar/ingest.hpp"

namespace effpar::ingest {

namespace {

constexpr const char* kTop10HplTag = "efficiency-vs-processors:hpl";
constexpr const char* kTop50Tag = "processors-vs-ranking:top50";
constexpr const char* kTop10HpcgTag = "efficiency-vs-processors:hpcg";

struct Top50Row {
  int rank;
  ProcessorCount cores;
  double gflops_per_core;
  char accel;  // N none, A coprocessor, G GPU
  double one_minus_alpha;
};

// 2017 TOP50 by HPL: core counts, per-core performance with accelerator
// class, and (1 - alpha_eff) from HPL.
constexpr std::array<Top50Row, 50> kTop50 = {{
    {1, 10649600, 11.78, 'N', 3.273e-8},  {2, 3120000, 9.37, 'A', 1.991e-7},
    {3, 361760, 70.0, 'G', 8.094e-7},     {4, 560640, 48.4, 'G', 9.656e-7},
    {5, 1572864, 12.8, 'N', 1.096e-7},    {6, 622336, 44.8, 'N', 1.590e-6},
    {7, 556104, 44.8, 'N', 1.507e-6},     {8, 705024, 16.1, 'N', 1.040e-7},
    {9, 786432, 12.8, 'N', 2.191e-7},     {10, 301056, 36.8, 'N', 1.221e-6},
    {11, 241920, 33.6, 'N', 6.399e-7},    {12, 241920, 52.9, 'N', 3.636e-6},
    {13, 148716, 66.96, 'N', 4.028e-6},   {14, 241808, 44.8, 'N', 3.064e-6},
    {15, 241108, 29.5, 'N', 8.052e-7},    {16, 231424, 41.6, 'N', 2.748e-6},
    {17, 185088, 40.0, 'N', 1.689e-6},    {18, 185088, 36.8, 'N', 1.560e-6},
    {19, 220800, 30.4, 'N', 1.225e-6},    {20, 522080, 18.4, 'N', 1.642e-6},
    {21, 458752, 12.8, 'N', 3.756e-7},    {22, 144900, 36.8, 'N', 7.842e-7},
    {23, 393216, 12.8, 'N', 4.383e-7},    {24, 145920, 36.8, 'N', 2.250e-6},
    {25, 126468, 33.6, 'N', 6.107e-7},    {26, 126468, 33.6, 'N', 6.107e-7},
    {27, 72800, 84.2, 'G', 9.811e-6},     {28, 72800, 84.2, 'G', 9.811e-6},
    {29, 124200, 26.8, 'N', 3.036e-6},    {30, 72000, 83.9, 'G', 6.173e-6},
    {31, 110160, 31.6, 'N', 9.318e-7},    {32, 225984, 21.6, 'N', 2.446e-6},
    {33, 152692, 36.7, 'G', 5.204e-6},    {34, 92160, 35.2, 'N', 1.246e-6},
    {35, 147456, 21.6, 'N', 6.743e-7},    {36, 86016, 41.6, 'N', 3.160e-6},
    {37, 89856, 33.6, 'N', 8.635e-7},     {38, 89856, 33.6, 'N', 8.635e-7},
    {39, 74520, 79.4, 'G', 1.365e-5},     {40, 186368, 25.2, 'G', 4.464e-6},
    {41, 88992, 35.4, 'N', 2.677e-6},     {42, 194616, 9.25, 'A', 1.718e-6},
    {43, 100064, 36.8, 'N', 4.815e-6},    {44, 69600, 41.6, 'N', 2.997e-6},
    {45, 69600, 41.6, 'N', 2.997e-6},     {46, 82944, 31.6, 'N', 1.243e-6},
    {47, 76032, 40.0, 'N', 4.628e-6},     {48, 72000, 35.2, 'N', 2.347e-6},
    {49, 42688, 69.4, 'G', 9.587e-6},     {50, 174720, 9.37, 'A', 2.772e-6},
}};

struct Top10Row {
  const char* name;
  double hpl_efficiency;
  double hpcg_efficiency;
  int hpcg_rank;
  double hpcg_one_minus_alpha;
};

// Same machines as kTop50[0..9], HPL and HPCG efficiencies. The HPCG rank of
// Piz Daint is not printed; 9 is the one rank left free by the others.
constexpr std::array<Top10Row, 10> kTop10 = {{
    {"Sunway TaihuLight", 0.742, 0.0038, 4, 2.44e-5},
    {"Tianhe-2", 0.617, 0.0106, 2, 3.00e-5},
    {"Piz Daint", 0.774, 0.0186, 9, 1.46e-4},
    {"Titan", 0.649, 0.0119, 7, 1.48e-4},
    {"Sequoia", 0.853, 0.0164, 6, 3.81e-5},
    {"Cori", 0.503, 0.0127, 5, 1.24e-4},
    {"Oakforest-PACS", 0.544, 0.0155, 3, 1.14e-4},
    {"K computer", 0.932, 0.0534, 1, 2.51e-5},
    {"Mira", 0.853, 0.0166, 10, 7.54e-5},
    {"Trinity", 0.731, 0.0165, 8, 1.98e-4},
}};

Accelerator accel_of(char c) {
  switch (c) {
    case 'A': return Accelerator::coprocessor;
    case 'G': return Accelerator::gpu;
    default: return Accelerator::none;
  }
}

MachineRecord make_record(const Top50Row& row, std::string name, Benchmark bench, int rank,
                          double e, const char* tag) {
  MachineRecord r;
  r.name = std::move(name);
  r.year = 2017;
  r.rank = rank;
  r.benchmark = bench;
  const double peak = static_cast<double>(row.cores) * row.gflops_per_core;
  r.r_peak = PerformanceFigure::gflops(peak);
  r.r_max = PerformanceFigure::gflops(e * peak);
  r.cores = row.cores;
  r.architecture = Architecture::other;
  r.accel = accel_of(row.accel);
  r.source = tag;
  return r;
}

FigureTable table(std::string tag, std::string x, std::string y,
                  std::vector<FigurePoint> points) {
  return {std::move(tag), std::move(x), std::move(y), std::move(points)};
}

std::vector<FigureTable> build_tables() {
  std::vector<FigureTable> t;

  t.push_back(table("trend", "year", "one_minus_alpha",
                    {{1993, 1e-3, "trend"}, {2017, 1e-7, "trend"},
                     {2016, 33e-9, "Sunway TaihuLight"}}));

  t.push_back(table(
      "architecture-2000", "rank", "one_minus_alpha",
      {{1, 3.614e-05, "MPP"},  {2, 1.375e-04, "MPP"},  {3, 1.482e-04, "MPP"},
       {4, 3.103e-04, "MPP"},  {5, 2.690e-03, "MPP"},  {6, 3.117e-03, "MPP"},
       {7, 4.247e-04, "MPP"},  {8, 4.247e-04, "MPP"},  {9, 1.362e-03, "MPP"},
       {10, 3.493e-04, "MPP"}, {11, 6.552e-04, "MPP"}, {12, 2.355e-04, "MPP"},
       {13, 4.112e-04, "MPP"}, {14, 5.575e-04, "MPP"}, {15, 5.575e-04, "MPP"},
       {16, 5.811e-04, "MPP"}, {17, 4.201e-03, "MPP"}, {18, 4.894e-04, "MPP"},
       {19, 7.143e-04, "MPP"}, {20, 7.102e-04, "MPP"}, {21, 9.167e-04, "MPP"},
       {22, 9.167e-04, "MPP"}, {25, 1.685e-03, "MPP"}, {26, 7.362e-04, "MPP"},
       {27, 6.746e-04, "MPP"}, {28, 2.227e-03, "MPP"}, {29, 6.005e-04, "MPP"},
       {30, 8.343e-04, "MPP"}, {31, 8.343e-04, "MPP"}, {32, 8.343e-04, "MPP"},
       {33, 8.343e-04, "MPP"}, {34, 5.828e-04, "MPP"}, {35, 3.267e-04, "MPP"},
       {36, 4.592e-04, "MPP"}, {37, 9.823e-04, "MPP"}, {38, 1.551e-03, "MPP"},
       {39, 7.889e-04, "MPP"}, {40, 7.889e-04, "MPP"}, {41, 1.120e-03, "MPP"},
       {42, 1.136e-03, "MPP"}, {43, 1.500e-03, "MPP"}, {44, 1.282e-03, "MPP"},
       {45, 9.241e-04, "MPP"}, {46, 1.352e-03, "MPP"}, {47, 7.905e-04, "MPP"},
       {49, 1.369e-03, "MPP"}, {23, 6.749e-04, "Cluster"}, {24, 6.749e-04, "Cluster"},
       {50, 1.063e-03, "Cluster"}}));

  t.push_back(table(
      "architecture-2016", "rank", "one_minus_alpha",
      {{3, 9.656e-07, "MPP"},      {4, 1.096e-07, "MPP"},      {6, 2.191e-07, "MPP"},
       {7, 1.221e-06, "MPP"},      {8, 2.087e-06, "MPP"},      {9, 1.689e-06, "MPP"},
       {10, 1.560e-06, "MPP"},     {13, 3.756e-07, "MPP"},     {14, 4.383e-07, "MPP"},
       {16, 2.250e-06, "MPP"},     {17, 6.107e-07, "MPP"},     {18, 6.107e-07, "MPP"},
       {24, 2.446e-06, "MPP"},     {29, 8.635e-07, "MPP"},     {30, 8.635e-07, "MPP"},
       {32, 4.464e-06, "MPP"},     {35, 4.815e-06, "MPP"},     {36, 2.997e-06, "MPP"},
       {37, 2.997e-06, "MPP"},     {45, 1.052e-06, "MPP"},     {49, 4.131e-06, "MPP"},
       {50, 4.682e-06, "MPP"},     {2, 1.991e-07, "Cluster"},  {5, 1.040e-07, "Cluster"},
       {11, 1.225e-06, "Cluster"}, {12, 1.402e-06, "Cluster"}, {15, 1.163e-06, "Cluster"},
       {19, 9.811e-06, "Cluster"}, {20, 9.811e-06, "Cluster"}, {21, 3.036e-06, "Cluster"},
       {22, 6.173e-06, "Cluster"}, {23, 9.318e-07, "Cluster"}, {25, 5.204e-06, "Cluster"},
       {26, 1.246e-06, "Cluster"}, {27, 6.743e-07, "Cluster"}, {28, 3.160e-06, "Cluster"},
       {31, 1.365e-05, "Cluster"}, {33, 2.677e-06, "Cluster"}, {34, 1.718e-06, "Cluster"},
       {38, 1.243e-06, "Cluster"}, {39, 4.628e-06, "Cluster"}, {40, 2.347e-06, "Cluster"},
       {41, 9.587e-06, "Cluster"}, {42, 2.772e-06, "Cluster"}, {43, 4.132e-06, "Cluster"},
       {44, 5.438e-06, "Cluster"}, {46, 2.976e-06, "Cluster"}, {47, 6.123e-06, "Cluster"},
       {48, 7.291e-06, "Cluster"}}));

  {
    std::vector<FigurePoint> hpl, hpcg;
    for (std::size_t i = 0; i < kTop10.size(); ++i) {
      const double millions = static_cast<double>(kTop50[i].cores) / 1e6;
      hpl.push_back({millions, kTop50[i].one_minus_alpha, kTop10[i].name});
      hpcg.push_back({millions, kTop10[i].hpcg_one_minus_alpha, kTop10[i].name});
    }
    t.push_back(table("alpha-vs-processors:hpl", "processors_millions", "one_minus_alpha", hpl));
    t.push_back(table("alpha-vs-processors:hpcg", "processors_millions", "one_minus_alpha", hpcg));
  }

  {
    std::vector<FigurePoint> cores;
    for (const auto& row : kTop50) {
      cores.push_back({static_cast<double>(row.rank), static_cast<double>(row.cores) / 1e6,
                       row.rank <= 10 ? "top10" : "top50"});
    }
    t.push_back(table("processors-vs-ranking", "rank", "processors_millions", cores));
  }

  t.push_back(table("ranking-hpl-vs-hpcg", "hpl_rank", "hpcg_rank",
                    {{1, 4, "Sunway TaihuLight"},
                     {2, 2, "Tianhe-2"},
                     {4, 7, "Titan"},
                     {5, 6, "Sequoia"},
                     {6, 5, "Cori"},
                     {7, 3, "Oakforest-PACS"},
                     {8, 1, "K computer"},
                     {9, 10, "Mira"},
                     {10, 8, "Trinity"}}));

  t.push_back(table("alpha-hpl-vs-hpcg", "one_minus_alpha_hpl", "one_minus_alpha_hpcg",
                    {{3.273e-08, 3.121e-5, "Sunway TaihuLight"},
                     {1.991e-07, 2.882e-5, "Tianhe-2"},
                     {9.656e-07, 1.469e-4, "Titan"},
                     {1.096e-07, 3.910e-5, "Sequoia"},
                     {1.590e-06, 1.220e-4, "Cori"},
                     {1.507e-06, 6.092e-5, "Oakforest-PACS"},
                     {1.040e-07, 2.534e-5, "K computer"},
                     {2.191e-07, 7.353e-5, "Mira"},
                     {1.221e-06, 2.043e-4, "Trinity"}}));

  t.push_back(table("amplification-vs-processors", "processors", "amplification",
                    {{12288000, 0.305e08, "Sunway"},
                     {2462640, 0.520e07, "PEZY"},
                     {705024, 0.961e07, "SPARC"},
                     {1572864, 0.911e07, "Power PC"},
                     {979968, 0.466e06, "Intel"},
                     {622336, 0.628e06, "Intel"},
                     {556104, 0.664e06, "Intel"},
                     {361760, 0.12307e07, "Intel+NVIDIA"},
                     {560640, 0.104e07, "Intel+NVIDIA"},
                     {62400, 0.102e06, "Intel+NVIDIA"},
                     {72000, 0.162e06, "Intel+NVIDIA"},
                     {27056, 0.162e06, "Intel+NVIDIA"},
                     {74520, 0.733e05, "Intel+NVIDIA"},
                     {186368, 0.224e06, "Intel+NVIDIA"},
                     {42688, 0.104e06, "Intel+NVIDIA"},
                     {3120000, 0.942e07, "Intel+Intel"},
                     {194616, 0.110e07, "Intel+Intel"}}));

  t.push_back(table("efficiency-vs-processors", "processors", "efficiency",
                    {{12288000, 0.742, "Sunway"},
                     {2462640, 0.679, "PEZY"},
                     {705024, 0.932, "SPARC"},
                     {1572864, 0.853, "Power PC"},
                     {979968, 0.322, "Intel"},
                     {622336, 0.503, "Intel"},
                     {556104, 0.544, "Intel"},
                     {361760, 0.774, "Intel+NVIDIA"},
                     {560640, 0.649, "Intel+NVIDIA"},
                     {62400, 0.583, "Intel+NVIDIA"},
                     {72000, 0.692, "Intel+NVIDIA"},
                     {27056, 0.557, "Intel+NVIDIA"},
                     {74520, 0.496, "Intel+NVIDIA"},
                     {186368, 0.546, "Intel+NVIDIA"},
                     {42688, 0.710, "Intel+NVIDIA"},
                     {3120000, 0.617, "Intel+Intel"},
                     {194616, 0.749, "Intel+Intel"}}));

  t.push_back(table("amplification-vs-ranking", "rank", "amplification",
                    {{1, 0.306e8, "None"},
                     {2, 0.943e7, "Coprocessor"},
                     {3, 0.124e7, "GPU"},
                     {4, 0.104e7, "GPU"},
                     {5, 0.909e7, "None"},
                     {6, 0.629e6, "None"},
                     {7, 0.662e6, "None"},
                     {8, 0.961e7, "None"},
                     {9, 0.457e7, "None"},
                     {10, 0.820e6, "None"},
                     {11, 0.156e7, "None"},
                     {12, 0.275e6, "None"},
                     {13, 0.248e6, "None"},
                     {14, 0.327e6, "None"},
                     {15, 0.124e7, "None"},
                     {16, 0.364e6, "None"},
                     {17, 0.595e6, "None"},
                     {18, 0.641e6, "None"},
                     {19, 0.820e6, "None"},
                     {20, 0.610e6, "None"},
                     {21, 0.266e7, "None"},
                     {22, 0.128e7, "None"},
                     {23, 0.228e7, "None"},
                     {24, 0.444e6, "None"},
                     {25, 0.164e7, "None"},
                     {26, 0.164e7, "None"},
                     {27, 0.102e6, "GPU"},
                     {28, 0.114e6, "GPU"},
                     {29, 0.329e6, "None"},
                     {30, 0.162e6, "GPU"},
                     {31, 0.107e7, "None"},
                     {32, 0.408e6, "None"},
                     {33, 0.192e6, "GPU"},
                     {34, 0.192e6, "None"},
                     {35, 0.8e6, "None"},
                     {36, 0.316e6, "None"},
                     {37, 0.116e7, "None"},
                     {38, 0.116e7, "None"},
                     {39, 0.735e5, "GPU"},
                     {40, 0.224e6, "GPU"},
                     {41, 0.373e6, "None"},
                     {42, 0.110e7, "Coprocessor"},
                     {43, 0.207e6, "None"},
                     {44, 0.334e6, "None"},
                     {45, 0.334e6, "None"},
                     {46, 0.806e6, "None"},
                     {47, 0.216e6, "None"},
                     {48, 0.426e6, "None"},
                     {49, 0.104e6, "GPU"},
                     {50, 0.676e6, "Coprocessor"}}));

  t.push_back(table("rmax-vs-rpeak:bubbles", "rpeak_eflops", "rmax_eflops",
                    {{0.1254, 0.09301, "Sunway TaihuLight"},
                     {0.0549, 0.033863, "Tianhe-2"},
                     {0.0253, 0.01960, "Piz Daint"},
                     {0.0282, 0.01914, "Gyoukou"},
                     {0.0271, 0.01759, "Titan"},
                     {0.0201, 0.01711, "Sequoia"},
                     {0.0439, 0.01414, "Trinity"},
                     {0.0279, 0.01401, "Cori"},
                     {0.0249, 0.01355, "Oakforest-PACS"},
                     {0.0113, 0.01051, "K computer"}}));

  t.push_back(table("rmax-vs-rpeak-at-alpha:bubbles", "rpeak_eflops", "rmax_eflops",
                    {{0.125, 0.093, "Sunway TaihuLight HPL"},
                     {0.125, 0.000375, "Sunway TaihuLight HPCG"},
                     {0.0113, 0.0105, "K computer HPL"},
                     {0.0113, 0.0006, "K computer HPCG"}}));
  return t;
}

}  // namespace

RecordSet bundled_dataset() {
  RecordSet set;
  set.source = "bundled";
  for (std::size_t i = 0; i < kTop50.size(); ++i) {
    const auto& row = kTop50[i];
    if (i < kTop10.size()) {
      set.records.push_back(make_record(row, kTop10[i].name, Benchmark::hpl, row.rank,
                                        kTop10[i].hpl_efficiency, kTop10HplTag));
    } else {
      // Only (1 - alpha) and k are printed; E follows from them.
      const double e = efficiency(AlphaValue::from_one_minus_alpha(row.one_minus_alpha), row.cores);
      set.records.push_back(make_record(row, "TOP50 #" + std::to_string(row.rank), Benchmark::hpl,
                                        row.rank, e, kTop50Tag));
    }
  }
  for (std::size_t i = 0; i < kTop10.size(); ++i) {
    set.records.push_back(make_record(kTop50[i], kTop10[i].name, Benchmark::hpcg,
                                      kTop10[i].hpcg_rank, kTop10[i].hpcg_efficiency,
                                      kTop10HpcgTag));
  }
  return set;
}

const std::vector<FigureTable>& bundled_tables() {
  static const std::vector<FigureTable> tables = build_tables();
  return tables;
}

const FigureTable& bundled_table(std::string_view tag) {
  const auto& tables = bundled_tables();
  auto it = std::find_if(tables.begin(), tables.end(),
                         [&](const FigureTable& t) { return t.tag == tag; });
  if (it == tables.end()) throw InvalidArgument("no bundled table '" + std::string(tag) + "'");
  return *it;
}

std::optional<double> bundled_reference_one_minus_alpha(const MachineRecord& record) {
  if (record.year != 2017) return std::nullopt;
  if (record.source == kTop10HpcgTag) {
    for (std::size_t i = 0; i < kTop10.size(); ++i) {
      if (record.name == kTop10[i].name) return kTop10[i].hpcg_one_minus_alpha;
    }
    return std::nullopt;
  }
  if (record.source == kTop10HplTag || record.source == kTop50Tag) {
    if (record.rank >= 1 && record.rank <= static_cast<int>(kTop50.size())) {
      return kTop50[static_cast<std::size_t>(record.rank - 1)].one_minus_alpha;
    }
  }
  return std::nullopt;
}

}  // namespace effpar::ingest
