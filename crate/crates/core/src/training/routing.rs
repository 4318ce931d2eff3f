use crate::terrain::TerrainCategory;

/// Number of critic / discriminator heads, one per terrain category.
pub const NUM_HEADS: usize = 3;

/// Picks the head belonging to `category`. The same selection is used for
/// critic values and discriminator scores.
#[inline]
pub fn route<T: Copy>(category: TerrainCategory, heads: &[T; NUM_HEADS]) -> T {
    heads[category.index()]
}

/// Routes a whole batch: `heads` is `N x 3` row-major, one category per row.
pub fn route_batch<T: Copy>(categories: &[TerrainCategory], heads: &[[T; NUM_HEADS]]) -> Vec<T> {
    categories
        .iter()
        .zip(heads)
        .map(|(&c, h)| route(c, h))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selects_by_label() {
        let heads = [0.1, 0.7, -0.3];
        assert_eq!(route(TerrainCategory::GapCrossing, &heads), 0.7);
        assert_eq!(route(TerrainCategory::StairsPlatforms, &heads), 0.1);
        assert_eq!(route(TerrainCategory::Rough, &heads), -0.3);
    }

    #[test]
    fn equal_heads_are_routing_invariant() {
        let heads = [2.5; 3];
        for c in TerrainCategory::ALL {
            assert_eq!(route(c, &heads), 2.5);
        }
    }

    #[test]
    fn other_heads_do_not_matter() {
        let base = [0.1, 0.7, -0.3];
        let perms = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        for c in TerrainCategory::ALL {
            let k = c.index();
            for p in perms {
                // keep the selected head in place, permute the others
                let mut heads = [0.0; 3];
                let others: Vec<f64> = p.iter().filter(|&&i| i != k).map(|&i| base[i]).collect();
                let mut it = others.into_iter();
                for (i, h) in heads.iter_mut().enumerate() {
                    *h = if i == k { base[k] } else { it.next().unwrap() };
                }
                assert_eq!(route(c, &heads), base[k]);
            }
        }
    }

    #[test]
    fn batch_routing() {
        let cats = [TerrainCategory::Rough, TerrainCategory::GapCrossing];
        let heads = [[1, 2, 3], [4, 5, 6]];
        assert_eq!(route_batch(&cats, &heads), vec![3, 5]);
    }
}
