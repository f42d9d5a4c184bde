//! Property tests for the annotation store.

use std::collections::BTreeMap;

use proptest::prelude::*;
use req2uml_core::{Document, Span};

const TYPE_NAMES: [&str; 4] = ["Token", "Lookup", "Sentence", "classe"];

fn arb_annotations() -> impl Strategy<Value = Vec<(usize, usize, usize)>> {
    // (type index, start, end) over a text of 12 chars.
    proptest::collection::vec((0usize..4, 0usize..=12, 0usize..=12), 0..24).prop_map(|v| {
        v.into_iter()
            .map(|(t, a, b)| (t, a.min(b), a.max(b)))
            .collect()
    })
}

proptest! {
    /// `annotations_in` equals a brute-force linear filter for all inputs.
    #[test]
    fn annotations_in_matches_brute_force(
        anns in arb_annotations(),
        type_mask in 0usize..16,
        region_a in 0usize..=12,
        region_b in 0usize..=12,
    ) {
        let region = Span::new(region_a.min(region_b), region_a.max(region_b));
        let types: Vec<&str> = TYPE_NAMES
            .iter()
            .enumerate()
            .filter(|(i, _)| type_mask & (1 << i) != 0)
            .map(|(_, t)| *t)
            .collect();

        let mut doc = Document::new("abcdefghijkl");
        for (t, start, end) in &anns {
            doc.add_annotation(TYPE_NAMES[*t], Span::new(*start, *end), BTreeMap::new())
                .unwrap();
        }

        // Brute force: filter everything, then sort canonically.
        let mut expected: Vec<(usize, usize, u32)> = anns
            .iter()
            .enumerate()
            .filter(|(_, (t, start, end))| {
                types.contains(&TYPE_NAMES[*t])
                    && region.start <= *start
                    && *end <= region.end
            })
            .map(|(id, (_, start, end))| (*start, *end, id as u32))
            .collect();
        expected.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)).then(a.2.cmp(&b.2)));

        let got: Vec<(usize, usize, u32)> = doc
            .annotations_in(&types, region)
            .iter()
            .map(|a| (a.span.start, a.span.end, a.id))
            .collect();

        prop_assert_eq!(got, expected);
    }
}
