//! Document representations. Every builder returns a [`DesignMatrix`] whose
//! row `i` describes document `i` of the corpus it was built from.

mod bow;
mod embedding;
mod lda;
mod matrix;
mod similarity;
mod wordvec;

pub use bow::{build_tf, build_tfidf, smoothed_idf};
pub use embedding::{
    encode_embeddings, fnv1a64, inspect_embeddings, load_precomputed, validate_embedding_file,
    write_embedding_file, EmbeddingEncoding, EmbeddingIssue, EmbeddingReport, MAGIC,
};
pub use lda::{fit_lda, fit_lda_with, lda_to_matrix, LdaConfig, LdaModel};
pub use matrix::{DesignMatrix, RepresentationKind, Row, SparseRow};
pub use similarity::{cosine_similarity_matrix, SimilarityCache};
pub use wordvec::{build_wordvec_avg, WordVectorTable};
