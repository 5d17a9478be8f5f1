#include "colscale/reference_data.hpp"

namespace col {
namespace {

// Feature columns in Feature order: complexity, impersonal, info_density,
// bracket_distance, sentence_length, pronouns_12, temporal_adv,
// interjections, exbraciation. Rates are per 10,000 non-punctuation tokens.
constexpr ReferenceText kReference[] = {
    {"D_anthus", ColClass::literacy, "(Use) Society", 19, 1.7, {393, 181.4, 3.7, 5.8, 14.6, 138, 143, 4, 10.3}},
    {"D_becher", ColClass::literacy, "(Science) Economics", 17, 1.8, {156.1, 229.1, 3.1, 5.7, 22.5, 59, 208, 0, 8.4}},
    {"D_birken", ColClass::literacy, "(Use) Society", 17, 0.9, {170.8, 163.7, 3, 6.7, 15.7, 153, 221, 0.8, 3.2}},
    {"D_forster", ColClass::literacy, "(Science) Travel Lit.", 18, 2.1, {191.8, 204.5, 3.7, 7.1, 17.7, 171, 174, 0, 6.3}},
    {"D_freyberger", ColClass::literacy, "(Science) History", 17, 0.5, {156.4, 135.9, 3.2, 5.7, 17.9, 74, 313, 0.9, 2.6}},
    {"D_gessner", ColClass::literacy, "(Science) History", 18, 0.9, {208.7, 194.9, 3.2, 6, 16.4, 223, 241, 0, 10.6}},
    {"D_harenberg", ColClass::literacy, "(Use) Popular Science", 18, 2.0, {229.4, 196.1, 3.2, 6.8, 19.2, 125, 165, 0.7, 5.8}},
    {"D_knigge", ColClass::literacy, "(Use) Decency Lit.", 18, 1.5, {221.5, 217.5, 2.8, 5.8, 17.6, 181, 126, 0, 6.4}},
    {"D_mendelssohn", ColClass::literacy, "(Science) Theology", 18, 0.7, {134.3, 127.9, 2.9, 5.2, 17.9, 170, 93, 0.8, 8.4}},
    {"D_michelis", ColClass::literacy, "(Use) Travel Lit.", 19, 1.3, {245.5, 171.6, 3.6, 5.5, 17.1, 229, 153, 0.8, 8.7}},
    {"D_nietzsche", ColClass::literacy, "(Science) Philosophy", 19, 3.1, {367.6, 90.5, 4.4, 7.6, 21.2, 207, 118, 0.8, 3.3}},
    {"D_nn-weltmann", ColClass::literacy, "(Use) Decency Lit.", 17, 0.6, {152, 220.4, 2.2, 4.6, 23.2, 354, 166, 0, 8.6}},
    {"D_ranke", ColClass::literacy, "(Science) History", 19, 1.5, {255.1, 155.9, 3.6, 6, 17.4, 103, 216, 0, 10.7}},
    {"D_simmel", ColClass::literacy, "(Science) Sociology", 19, 3.4, {396.7, 97.3, 4.2, 7.2, 24.3, 108, 133, 0, 4.2}},
    {"D_thomasius", ColClass::literacy, "(Science) Philosophy", 17, 1.8, {175.6, 153.1, 2.9, 6.1, 22.7, 156, 111, 0, 0}},
    {"N_bauernleben", ColClass::orality, "Chronicle", 17, -2.7, {158.6, 91.3, 3.3, 4.8, 13.6, 345, 358, 20, 60.1}},
    {"N_braeker", ColClass::orality, "Autobiography", 18, -2.0, {210.7, 52.1, 3.1, 5.2, 14, 687, 384, 6.4, 6.4}},
    {"N_briefwechsel", ColClass::orality, "Correspondence", 19, -3.8, {198.4, 97.1, 3, 3.6, 13.7, 960, 410, 11.8, 76}},
    {"N_dietz", ColClass::orality, "Autobiography", 18, -1.8, {120.7, 114.1, 2.5, 5.5, 15.2, 601, 345, 6.7, 10.8}},
    {"N_guentzer", ColClass::orality, "Autobiography", 17, -2.9, {110.5, 79.5, 2.6, 4.5, 11.1, 870, 294, 3.3, 38.5}},
    {"N_koralek", ColClass::orality, "Diary", 19, -2.6, {226.5, 108.7, 2.3, 3.8, 10.2, 530, 336, 5, 29.3}},
    {"N_nehrlich", ColClass::orality, "Autobiography", 18, -3.1, {114.7, 94.6, 2.3, 4.9, 14.5, 794, 364, 11.2, 34.5}},
    {"N_soeldnerleben", ColClass::orality, "Diary", 17, -2.7, {80, 121, 3.5, 4, 13.6, 450, 334, 1.5, 226.7}},
    {"N_zimmer", ColClass::orality, "Diary", 19, -1.9, {241.6, 173.4, 3, 5.3, 13.3, 597, 463, 9.3, 30.3}},
};

}  // namespace

std::span<const ReferenceText> reference_texts() { return kReference; }

std::vector<FeatureVector> reference_feature_vectors() {
  std::vector<FeatureVector> out;
  for (const auto& r : kReference) {
    FeatureVector fv;
    fv.doc_id = std::string(r.doc_id);
    fv.values = r.features;
    fv.label = r.label;
    fv.category = std::string(r.genre);
    out.push_back(std::move(fv));
  }
  return out;
}

}  // namespace col
