use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(
        "unknown solid `{0}` (expected tetrahedron, cube, octahedron, dodecahedron or icosahedron)"
    )]
    UnknownSolid(String),
    #[error("vertex index {index} out of range for a solid with {count} vertices")]
    VertexOutOfRange { index: usize, count: usize },
    #[error("({0}, {1}) is not an edge of the solid")]
    NotAnEdge(usize, usize),
    #[error("path endpoints must differ")]
    SameEndpoints,
    #[error("invalid cut path: {0}")]
    InvalidCutPath(String),
    #[error("net is not a simple polygon: {0}")]
    NonSimpleNet(String),
    #[error("anchor {0} outside [0, 1)")]
    AnchorOutOfRange(f64),
    #[error("malformed fold spec: {0}")]
    MalformedFoldSpec(String),
    #[error("facet areas sum to {facets} but the net has area {net}")]
    BadPartition { facets: f64, net: f64 },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },
}
