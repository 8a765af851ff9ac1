from .cli import PipelineManifest, build_parser, main

__all__ = ["PipelineManifest", "build_parser", "main"]
