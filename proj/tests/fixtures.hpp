#pragma once

#include <array>
#include <string>
#include <vector>

// Hand-verified paragraphs and their expected f1..f20 vectors. Word counts,
// stddevs and medians were computed by hand from the segmentation rules.
namespace fixtures {

struct ParagraphFixture {
    std::string paragraph;
    std::array<double, 20> expected;
};

inline const std::vector<ParagraphFixture>& paragraphs() {
    static const std::vector<ParagraphFixture> cases = {
        // sentences [4,4,6]; stddev sqrt(4/3); "Researchers" fires f17
        {"The findings are significant. They advance the field. Researchers hope to "
         "build on them.",
         {3, 14, 0, 0, 0, 0, 0, 1.1547005383792515, 1, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0}},
        // sentences [5,19]; "Fig." and "al." protected; most cues fire
        {"But why does this matter? Because the 2023 results (see Fig. 2) differ; "
         "however, Smith et al. argue otherwise - a claim we revisit.",
         {2, 24, 1, 1, 1, 1, 0, 9.899494936611665, 14, 1, 0, 0, 1, 1, 1, 1, 0, 1, 0, 1}},
        // degenerate single short sentence, no terminator
        {"hello world",
         {1, 2, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}},
        // "Dr." protected; apostrophe and digit fire
        {"Dr. Smith's lab reported a 4% rise.",
         {1, 7, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0}},
        // colon and semicolon inside one 13-word sentence; "Although" fires f12
        {"Although the data vary, the trend is clear: progress continues; nothing "
         "stops it.",
         {1, 13, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0}},
        // one 36-word sentence; 11 capitals vs 1 period fires f19
        {"NASA and ESA collaborated on the Mars mission with JPL teams, and the "
         "combined effort required extensive coordination across many international "
         "partners during the entire decade of planning and development work overall "
         "in every single case.",
         {1, 36, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0}},
        // sentences [10,35]: both length thresholds hit exactly
        {"The quick brown fox jumps over the lazy dog today. Researchers at the "
         "institute examined every sample carefully and recorded all measurements in "
         "the shared database so that future teams could verify each result without "
         "repeating the entire costly experimental procedure again next calendar "
         "year.",
         {2, 45, 0, 0, 0, 0, 0, 17.67766952966369, 25, 1, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0}},
        // sentences [11,34]: one word inside both thresholds, neither fires
        {"The quick brown fox jumps over the lazy dog again today. Researchers at "
         "the institute examined every sample carefully and recorded all measurements "
         "in the shared database so that future teams could verify each result "
         "without repeating the entire costly experimental procedure again next "
         "year.",
         {2, 45, 0, 0, 0, 0, 0, 16.263455967290593, 23, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0}},
        // "This" fires f16 but "thistle" does not; "etc." token never fires f20
        {"This thistle grows here. It does not matter etc. anyway.",
         {2, 10, 0, 0, 0, 0, 0, 1.4142135623730951, 2, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0}},
        // question split; "others'" normalizes to "others"; 2 capitals vs 1
        // period stays below the strict 2x bar
        {"Don't you think others' claims need review? Yes.",
         {2, 8, 0, 0, 0, 1, 1, 4.242640687119285, 6, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0}},
        // em dash fires f4 even unspaced; "slow—but" is not a "but" token
        {"Progress is slow\xE2\x80\x94"
         "but steady.",
         {1, 4, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}},
    };
    return cases;
}

}  // namespace fixtures
