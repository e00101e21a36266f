//! One type over every supported game class, for files and the CLI.

use crate::congestion::{CongestionGame, SingletonCongestionGame};
use crate::coordination::CoordinationGame;
use crate::gadgets::GadgetGame;
use crate::game::{Game, StructureTag, TableGame};
use crate::tree::GraphicalGame;

#[derive(Clone, Debug, PartialEq)]
pub enum AnyGame {
    NormalForm(TableGame),
    Graphical(GraphicalGame),
    Congestion(CongestionGame),
    SingletonCongestion(SingletonCongestionGame),
    Coordination(CoordinationGame),
    Gadget(GadgetGame),
}

macro_rules! dispatch {
    ($self:expr, $g:ident => $body:expr) => {
        match $self {
            AnyGame::NormalForm($g) => $body,
            AnyGame::Graphical($g) => $body,
            AnyGame::Congestion($g) => $body,
            AnyGame::SingletonCongestion($g) => $body,
            AnyGame::Coordination($g) => $body,
            AnyGame::Gadget($g) => $body,
        }
    };
}

impl Game for AnyGame {
    fn n_players(&self) -> usize {
        dispatch!(self, g => g.n_players())
    }
    fn strategy_count(&self, player: usize) -> usize {
        dispatch!(self, g => g.strategy_count(player))
    }
    fn utility(&self, profile: &[usize], player: usize) -> f64 {
        dispatch!(self, g => g.utility(profile, player))
    }
    fn structure(&self) -> StructureTag {
        dispatch!(self, g => g.structure())
    }
    fn influence_sets(&self) -> Option<Vec<Vec<usize>>> {
        dispatch!(self, g => g.influence_sets())
    }
}

impl AnyGame {
    pub fn kind(&self) -> &'static str {
        match self {
            AnyGame::NormalForm(_) => "normal-form",
            AnyGame::Graphical(_) => "graphical",
            AnyGame::Congestion(_) => "congestion",
            AnyGame::SingletonCongestion(_) => "singleton-congestion",
            AnyGame::Coordination(_) => "coordination",
            AnyGame::Gadget(_) => "gadget",
        }
    }
}

macro_rules! from_variant {
    ($($variant:ident($ty:ty)),*) => {
        $(impl From<$ty> for AnyGame {
            fn from(g: $ty) -> Self {
                AnyGame::$variant(g)
            }
        })*
    };
}

from_variant!(
    NormalForm(TableGame),
    Graphical(GraphicalGame),
    Congestion(CongestionGame),
    SingletonCongestion(SingletonCongestionGame),
    Coordination(CoordinationGame),
    Gadget(GadgetGame)
);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::gadget_threshold;
    use crate::game::tests::two_by_two;

    #[test]
    fn delegates() {
        let table = two_by_two();
        let any = AnyGame::from(table.clone());
        assert_eq!(any.utility(&[1, 1], 0), table.utility(&[1, 1], 0));
        assert_eq!(any.structure(), StructureTag::NormalFormTable);
        let gadget = gadget_threshold(4, 2).unwrap().instance.into_parts().0;
        let any = AnyGame::from(gadget);
        assert_eq!(any.kind(), "gadget");
        assert_eq!(any.influence_sets().unwrap().len(), 4);
    }
}
