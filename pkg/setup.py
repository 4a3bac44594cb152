from setuptools import setup, find_packages

setup(
    name="eprgame",
    version="0.1.0",
    description="A CLI tool and library for three-player games played over EPR-style joint probabilities",
    packages=find_packages(exclude=["tests"]),
    install_requires=[
        "numpy>=1.24",
        "pyyaml>=6.0.2",
        "rich>=13.5.0",
        "scipy>=1.9",
    ],
    extras_require={
        "test": [
            "pytest>=7.0",
            "hypothesis>=6.0",
        ],
    },
    entry_points={
        "console_scripts": [
            "eprgame=eprgame.cli:main",
        ],
    },
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
    python_requires=">=3.8",
)
