package hudson.model;

import java.util.List;

public interface AbstractBuild {
    Result getResult();

    int getNumber();

    AbstractBuild getPreviousBuild();

    AbstractBuild getNextBuild();

    ChangeLogSet getChangeSet();

    List<ChangeLogSet> getChangeSets();
}
