from setuptools import find_packages, setup

base_packages = [
    "pandas>=1.5",
    "numpy",
    "scipy",
    "scikit-learn",
    "networkx",
    "pytest",
]

util_packages = [
    "matplotlib",
    "jupyterlab",
]

docs_packages = ["sphinx==3.5.4", "sphinx_rtd_theme"]

dev_packages = base_packages + util_packages + docs_packages

with open("README.md", encoding="utf-8") as fh:
    long_description = fh.read()

setup(
    name="AttachPy",
    version="0.1",
    description="Random growth graphs with any target degree distribution",
    long_description=long_description,
    long_description_content_type="text/markdown",
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
    packages=find_packages(exclude=["notebooks", "tests", "tests.*"]),
    install_requires=base_packages,
    extras_require={
        "base": base_packages,
        "dev": dev_packages,
        "docs": docs_packages,
    },
    entry_points={"console_scripts": ["attachpy=attachpy.cli.cli:main"]},
    python_requires=">=3.8",
)
