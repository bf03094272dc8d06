use std::borrow::Borrow;
use std::fmt;
use std::sync::Arc;

/// Which universe a name belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NameKind {
    Node,
    Shape,
    Property,
}

macro_rules! name_type {
    ($(#[$meta:meta])* $ty:ident) => {
        $(#[$meta])*
        #[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $ty(Arc<str>);

        impl $ty {
            pub fn new(text: impl AsRef<str>) -> Self {
                $ty(Arc::from(text.as_ref()))
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Debug for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}({:?})", stringify!($ty), &*self.0)
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<&str> for $ty {
            fn from(text: &str) -> Self {
                $ty::new(text)
            }
        }

        impl Borrow<str> for $ty {
            fn borrow(&self) -> &str {
                &self.0
            }
        }
    };
}

name_type!(
    /// A node name (constant). Under the unique names assumption every
    /// node name denotes its own domain element.
    NodeName
);
name_type!(
    /// A shape name (concept name).
    ShapeName
);
name_type!(
    /// A property name (role name).
    PropName
);

/// A name tagged with its kind. Two names are equal iff text and kind are.
/// The same text may exist under several kinds.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Name {
    Node(NodeName),
    Shape(ShapeName),
    Property(PropName),
}

impl Name {
    pub fn kind(&self) -> NameKind {
        match self {
            Name::Node(_) => NameKind::Node,
            Name::Shape(_) => NameKind::Shape,
            Name::Property(_) => NameKind::Property,
        }
    }

    pub fn text(&self) -> &str {
        match self {
            Name::Node(n) => n.as_str(),
            Name::Shape(s) => s.as_str(),
            Name::Property(p) => p.as_str(),
        }
    }
}

impl From<NodeName> for Name {
    fn from(n: NodeName) -> Self {
        Name::Node(n)
    }
}

impl From<ShapeName> for Name {
    fn from(s: ShapeName) -> Self {
        Name::Shape(s)
    }
}

impl From<PropName> for Name {
    fn from(p: PropName) -> Self {
        Name::Property(p)
    }
}
