use vigor_core::twogen::default_pipeline;
use vigor_core::Arity;

#[test]
fn desk_scale_pipeline_for_both_orders() {
    let a = Arity::new(2).unwrap();
    for q in [2, 3] {
        let cert = default_pipeline(a, q, 2, 6).unwrap();
        let failed: Vec<_> = cert.identity_checks.iter().filter(|c| !c.pass).collect();
        assert!(failed.is_empty(), "{failed:?}");
        assert_eq!((cert.x, cert.x_blocks.len(), cert.y_blocks.len()), (12, 25, 12));
        assert_eq!(cert.graph_t.vertices.len(), 300);
        assert_eq!(cert.status, "verified");
        let json = serde_json::to_string(&cert).unwrap();
        let back: vigor_core::TwoGenCertificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back.recheck(), cert.identity_checks);
    }
}
