#pragma once

#include <w2vrec/baselines/ccdpp.hpp>
#include <w2vrec/baselines/cf.hpp>
#include <w2vrec/baselines/factor_model.hpp>
#include <w2vrec/baselines/latent.hpp>
#include <w2vrec/baselines/matrix.hpp>
#include <w2vrec/baselines/random.hpp>
#include <w2vrec/baselines/svd.hpp>
#include <w2vrec/corpus/checkin.hpp>
#include <w2vrec/corpus/dataset.hpp>
#include <w2vrec/corpus/fixture.hpp>
#include <w2vrec/corpus/sentences.hpp>
#include <w2vrec/corpus/vocabulary.hpp>
#include <w2vrec/embedding/config.hpp>
#include <w2vrec/embedding/io.hpp>
#include <w2vrec/embedding/model.hpp>
#include <w2vrec/embedding/sampler.hpp>
#include <w2vrec/embedding/sgns.hpp>
#include <w2vrec/embedding/similarity.hpp>
#include <w2vrec/embedding/trainer.hpp>
#include <w2vrec/eval/metrics.hpp>
#include <w2vrec/eval/report.hpp>
#include <w2vrec/harness/config.hpp>
#include <w2vrec/harness/experiment.hpp>
#include <w2vrec/harness/sweep.hpp>
#include <w2vrec/recommend/batch_io.hpp>
#include <w2vrec/recommend/interactions.hpp>
#include <w2vrec/recommend/list.hpp>
#include <w2vrec/recommend/recommenders.hpp>
#include <w2vrec/recommend/vote.hpp>
